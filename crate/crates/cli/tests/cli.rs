use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn golden(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semifree")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "semifree {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn plumb_a2() {
    let text = stdout(&["plumb", &path("a2_n3.json"), "--emit", "text"]);
    assert_eq!(text, golden("plumb_a2_n3.txt"));
    assert!(text.contains("h_v: L_v -> L_v  |h_v| = -2  d = y_e∘x_e\n"));
    assert!(text.contains("h_w: L_w -> L_w  |h_w| = -2  d = -x_e∘y_e\n"));
}

#[test]
fn plumb_triangle_json() {
    assert_eq!(stdout(&["plumb", &path("triangle.json")]), golden("plumb_triangle.json"));
}

#[test]
fn plumb_overrides() {
    let text = stdout(&["plumb", &path("a2_n3.json"), "--n", "2", "--coeff", "Q", "--emit", "text"]);
    assert!(text.starts_with("coefficients Q\n"));
    assert!(text.contains("|y_e| = 0"));
}

#[test]
fn plumb_endomorphism_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("endo.json");
    stdout(&["plumb", &path("a2_n3.json"), "--endomorphism", "-o", out.to_str().unwrap()]);
    let v = stdout(&["verify", out.to_str().unwrap()]);
    assert!(v.contains("ok endo.json: presentation, 6 generators, 28 rules"), "{v}");
}

#[test]
fn build_models() {
    assert_eq!(stdout(&["build", "--model", "D12:2", "--emit", "text"]), golden("build_d12_2.txt"));
    let s = stdout(&["build", "--model", "S:3,2", "--emit", "text"]);
    assert!(s.contains("h: L -> L  |h| = -2  d = a_1 + a_2\n"), "{s}");
    let m = stdout(&["build", "--model", "M:1,1", "--raw", "--coeff", "Zmod:5", "--emit", "text"]);
    assert!(m.starts_with("coefficients Zmod:5\n"));
    assert!(!m.contains("inverted"));
}

#[test]
fn localize_and_tensor() {
    assert_eq!(
        stdout(&["localize", &path("c1.json"), "--gen", "z", "--emit", "text"]),
        golden("localize_c1.txt")
    );
    let u = stdout(&["localize", &path("c1.json"), "--morphism", "u=1_{L} + z", "--emit", "text"]);
    assert!(u.contains("hat(u): L -> L  |hat(u)| = -1  d = 1_{L} - inv(u) - inv(u)∘z\n"), "{u}");
    let t = stdout(&["tensor", &path("c1.json"), &path("c1.json"), "--emit", "text"]);
    assert!(t.contains("rule 1_{L}⊗z∘z⊗1_{L} -> z⊗1_{L}∘1_{L}⊗z\n"), "{t}");
}

#[test]
fn hocolim_of_span() {
    assert_eq!(
        stdout(&["hocolim", &path("span_c1.json"), "--emit", "text"]),
        golden("hocolim_c1.txt")
    );
    let s = stdout(&["hocolim", &path("span_c1.json"), "--strictify", "--emit", "text"]);
    assert_eq!(s, "coefficients Z\nobjects K\nt_{z}: K -> K  |t_{z}| = -1  d = 0\n");
}

#[test]
fn simplify_script_matches_strictify() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.json");
    stdout(&["hocolim", &path("span_c1.json"), "-o", h.to_str().unwrap()]);
    let out = run(&["simplify", h.to_str().unwrap(), "--script", &path("steps.json"), "--emit", "text"]);
    assert!(out.status.success());
    let log = String::from_utf8(out.stderr).unwrap();
    assert!(log.contains("{\"op\":\"strictify\",\"generators\":[]}: 6 -> 1 generators"), "{log}");
    let direct = stdout(&["hocolim", &path("span_c1.json"), "--strictify", "--emit", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), direct);
}

#[test]
fn hom_ranks() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("s.json");
    stdout(&["build", "--model", "S:3,1", "--raw", "-o", s.to_str().unwrap()]);
    let j = stdout(&["hom", s.to_str().unwrap(), "--window", "-4:0", "--bound", "6"]);
    let v: serde_json::Value = serde_json::from_str(&j).unwrap();
    assert!(v.is_object(), "{j}");
    let md = stdout(&["hom", s.to_str().unwrap(), "--window", "-4:0", "--bound", "6", "--emit", "text"]);
    assert!(md.contains("| degree |"), "{md}");
}

#[test]
fn ginzburg() {
    assert_eq!(
        stdout(&["ginzburg", &path("a2_quiver.json"), "--n", "3", "--emit", "text"]),
        golden("ginzburg_a2.txt")
    );
    let w = stdout(&["ginzburg", &path("a2_quiver.json"), "--n", "3", "--witness", "--emit", "text"]);
    assert!(w.starts_with("equal: 2 objects, 4 generators\n"), "{w}");
    assert!(w.contains("  e* ↦ y_e\n"));
}

#[test]
fn equivalence_moves() {
    let f = stdout(&["equiv", &path("triangle.json"), "--flip", "g", "--emit", "text"]);
    assert!(f.starts_with("flip g -> g': both functors valid\n"), "{f}");
    assert!(f.contains("  x_g ↦ y_g'\n"));
    let g = stdout(&["equiv", &path("triangle.json"), "--gauge", "u"]);
    let v: serde_json::Value = serde_json::from_str(&g).unwrap();
    assert_eq!(v["move"], "gauge");
    let r = stdout(&["equiv", &path("triangle.json"), "--regauge", "u=1,w=-2"]);
    let v: serde_json::Value = serde_json::from_str(&r).unwrap();
    assert_eq!(v["invariant"], true);
    let both = run(&["equiv", &path("triangle.json"), "--flip", "g", "--gauge", "u"]);
    assert_eq!(both.status.code(), Some(2));
}

#[test]
fn normalize_data() {
    let once = stdout(&["normalize", &path("triangle.json")]);
    assert_eq!(once, golden("normalize_triangle.json"));
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("n.json");
    std::fs::write(&p, &once).unwrap();
    assert_eq!(stdout(&["normalize", p.to_str().unwrap()]), once);
}

#[test]
fn verify_directory() {
    let out = stdout(&["verify", &path("verify")]);
    assert!(out.ends_with("5 files, 0 failures\n"), "{out}");
    let lines: Vec<&str> = out.lines().collect();
    let mut sorted = lines[..5].to_vec();
    sorted.sort();
    assert_eq!(sorted, lines[..5]);
}

#[test]
fn verify_is_thread_independent() {
    let one = Command::new(env!("CARGO_BIN_EXE_semifree"))
        .args(["verify", &path("verify")])
        .env("SEMIFREE_THREADS", "1")
        .output()
        .unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_semifree"))
        .args(["verify", &path("verify")])
        .env("SEMIFREE_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn verify_rejects_broken() {
    let out = run(&["verify", &path("broken")]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAILED d_squared.json"), "{text}");
    assert!(text.contains("d^2 != 0"), "{text}");
}

#[test]
fn parse_errors_report_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\n  \"n\": 3,\n  \"vertices\": [ }\n").unwrap();
    let out = run(&["plumb", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn unknown_ring_is_an_error() {
    let out = run(&["build", "--model", "A1", "--coeff", "R"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["build", "--model", "S:3,2,1"],
        vec!["build", "--model", "M:1,2", "--emit", "text"],
    ] {
        assert_eq!(stdout(&args), stdout(&args));
    }
    let p = path("triangle.json");
    let a = stdout(&["plumb", &p, "--reorder"]);
    assert_eq!(a, stdout(&["plumb", &p, "--reorder"]));
}
