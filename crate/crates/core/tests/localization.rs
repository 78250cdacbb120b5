mod common;

use semifree::constructions::{localization_names, localize, localize_morphisms};
use semifree::fukaya::{c, d12_raw};
use semifree::{DgError, Ring};

#[test]
fn localized_circle_matches_golden_file() {
    println!("{}", common::localization_golden().unwrap());
}

#[test]
fn names() {
    assert_eq!(localization_names("1+yx"), ["inv(1+yx)", "hat(1+yx)", "check(1+yx)", "bar(1+yx)"]);
}

#[test]
fn composite_morphisms() {
    let raw = d12_raw(2, Ring::Integers).unwrap();
    let u = raw.poly_between("1_{L1} + y∘x", "L1", "L1").unwrap();
    let cat = localize_morphisms(&raw, &[("1+yx", u)]).unwrap();
    common::expect_d(&cat, "hat(1+yx)", "1_{L1} - inv(1+yx) - inv(1+yx)∘y∘x").unwrap();
    cat.audit_d_squared().unwrap();
}

#[test]
fn only_closed_degree_zero_morphisms() {
    let raw = c(2, Ring::Integers, false).unwrap();
    assert!(localize(&raw, &["z"]).is_err());
    let raw = c(1, Ring::Integers, false).unwrap();
    assert!(matches!(localize(&raw, &["w"]), Err(DgError::UnknownName(_)) | Err(DgError::Invalid(_))));
}
