use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invpoly")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn analyze_polynomial() {
    let o = run(&["analyze", "--poly", "z0^7 + z0*z1^3 + z2^2*z4 + z2*z3^2 + z3*z4^3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["weights"], serde_json::json!([13, 26, 35, 28, 21]));
    assert_eq!(v[0]["mu_real"], 2);
    assert_eq!(v[0]["torsion_order"], "2197");
}

#[test]
fn analyze_matrix_and_weights() {
    let m = "[[7,0,0,0,0],[1,3,0,0,0],[0,0,2,0,1],[0,0,1,2,0],[0,0,0,1,3]]";
    let o = run(&["analyze", "--matrix", m]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"degree\": 91"));
    let o = run(&["analyze", "--weights", "26,91,84,105,63", "--degree", "273"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v[0]["h0_d"].as_u64(), v[0]["mu_complex"].as_i64()), (Some(5), Some(0)));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(run(&["analyze", "--poly", "z0^2 + z9"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--matrix", "[[1,2]]"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--weights", "1,2,3", "--degree", "6"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["scan", "--input", "/nonexistent.csv"]).status.code(), Some(2));
    assert_eq!(run(&["h0", "--weights", "0,1,1,1,1", "--k", "3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn h0_counts_and_lists() {
    let o = run(&["h0", "--weights", "26,91,84,105,63", "--k", "273"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "5"));
    let o = run(&["h0", "--weights", "1,1,1,1,1", "--k", "1", "--list"]);
    assert_eq!(stdout(&o).lines().count(), 5);
    assert_eq!(stdout(&o).lines().next(), Some("0 0 0 0 1"));
    let o = run(&["h0", "--weights", "1,1,1,1,1", "--k", "-2"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn transpose_prints_dual() {
    let o = run(&["transpose", "--poly", "z0^7 + z0*z1^3 + z2^2*z4 + z2*z3^2 + z3*z4^3"]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    assert_eq!(t.trim(), "z0^7*z1 + z1^3 + z2^2*z3 + z3^2*z4 + z2*z4^3");
}

#[test]
fn scan_writes_markdown_table() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("table.csv");
    fs::write(&input, "177,295,270,370,70,1180\n52,663,867,1581,153,3315\n").unwrap();
    let out = dir.path().join("out.md");
    let o = run(&["scan", "--input", input.to_str().unwrap(), "--emit", "markdown", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let md = fs::read_to_string(&out).unwrap();
    assert!(md.contains("| (52,663,867,1581,153) | 3315 | 65 | 9 | 6 | 6 |"), "{md}");

    let json = dir.path().join("list.json");
    fs::write(&json, r#"[{"weights":[13,26,35,28,21],"degree":91}]"#).unwrap();
    let o = run(&["scan", "--input", json.to_str().unwrap(), "--format", "json", "--emit", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn suites_and_table_pass() {
    for suite in ["table", "cycle", "bh"] {
        let o = run(&["verify", "--suite", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).starts_with("PASS"));
    }
    let o = run(&["table"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 9);
}
