use std::process::{Command, Output};

fn modlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modlab")).args(args).output().expect("modlab runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn corpus(dir: &std::path::Path, ring: &str, module: &str) {
    let o = modlab(&["corpus", "generate", "--max-ring-order", ring, "--max-module-order", module, "--seed", "0", "--out", dir.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn verify_writes_a_report_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    corpus(dir.path(), "8", "16");
    let out = dir.path().join("r/flat.json");
    let o = modlab(&["verify", "--suite", "flat-projective", "--corpus", dir.path().to_str().unwrap(), "--out", out.to_str().unwrap(), "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(report["suite"], "flat-projective");
    assert_eq!(report["seed"], "3");
}

#[test]
fn unknown_suite_prints_usage_and_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    corpus(dir.path(), "4", "4");
    let o = modlab(&["verify", "--suite", "bogus", "--corpus", dir.path().to_str().unwrap(), "--out", "/dev/null", "--seed", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("usage:") && err.contains("reflexivity"), "{}", err);
}

#[test]
fn invalid_input_exits_two() {
    let o = modlab(&["corpus", "generate", "--max-ring-order", "1", "--max-module-order", "4", "--out", "/tmp/never"]);
    assert_eq!(o.status.code(), Some(2));
    let o = modlab(&["verify", "--suite", "all", "--corpus", "/nonexistent/corpus", "--out", "/dev/null"]);
    assert_eq!(o.status.code(), Some(2));
    let o = modlab(&["compute", "tensor", "--ring", "Q", "--n", "R", "--m", "R"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column 1"), "{}", stderr(&o));
    let o = modlab(&["compute", "snf", "--matrix", "[[1, x]]"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compute_snf() {
    let o = modlab(&["compute", "snf", "--matrix", "[[2, 4], [6, 8]]"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("D = diag(2,4)\n"), "{}", stdout(&o));
}

#[test]
fn compute_tensor_and_rker() {
    let o = modlab(&["compute", "tensor", "--ring", "Z4", "--n", "R/<2>", "--m", "R/<2>"]);
    assert_eq!(stdout(&o), "ℤ/2\n");
    let o = modlab(&["compute", "rker", "--ring", "Z6", "--n", "R/<2>", "--m", "R/<3>"]);
    assert_eq!(stdout(&o), "0 (comparison map: isomorphism)\n");
    let o = modlab(&["compute", "tensor", "--ring", "T2F2", "--n", "R", "--m", "R^2"]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn compute_dualeval_at_quotient() {
    let o = modlab(&["compute", "dualeval", "--ring", "Z4", "--m", "R/<2>", "--algebra", "R/<2>"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("S ⊗_R M = ℤ/2"), "{}", text);
    assert!(text.contains("M^vv(S) = ℤ/2 (canonical map: isomorphism)"), "{}", text);
}

#[test]
fn compute_hom_lists_generators() {
    let o = modlab(&["compute", "hom", "--ring", "Z4", "--m", "R", "--n", "R/<2>"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("ℤ/2\nf0 = "), "{}", text);
}
