mod common;

use semifree::plumbing::{normalize, sigma, PlumbingData};

#[test]
fn random_edge_flips() {
    common::edge_flips(40, 11).unwrap();
}

#[test]
fn random_sign_gauges() {
    common::sign_gauges(30, 12).unwrap();
}

#[test]
fn two_dimensional_gauges_can_fail() {
    let (ok, total) = common::two_dimensional_gauge_rate(60, 13);
    assert!(ok > 0 && ok < total, "{ok}/{total}");
}

#[test]
fn random_regauges() {
    common::sigma_regauges(40, 14).unwrap();
}

#[test]
fn triangle_class() {
    let data = PlumbingData::spheres(
        3,
        &["a", "b", "c"],
        &[("e", "a", "b", 1, 2), ("f", "b", "c", 1, -1), ("g", "a", "c", 1, 4)],
    );
    let s = sigma(&data).unwrap();
    assert_eq!(s.tree, ["e", "g"]);
    assert_eq!(s.coordinates, [-3]);
    let n = normalize(&data).unwrap();
    assert_eq!(sigma(&n).unwrap().coordinates.len(), 1);
}
