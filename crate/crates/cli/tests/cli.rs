use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn fixring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fixring")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn hilbert_verify_three_points() {
    let out = fixring(&["hilbert-verify", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["pass"], true);
    assert_eq!(r["checks"].as_array().unwrap().len(), 6);
    assert!(r.get("elapsed_ms").is_none());
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS"));
}

#[test]
fn hilbert_verify_one_point_and_modes() {
    let out = fixring(&["hilbert-verify", "--n", "1", "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert!(r["checks"].as_array().unwrap().is_empty());
    assert_eq!(r["dims"]["fixed_ring"], serde_json::json!([1]));
    assert!(out.stderr.is_empty());

    let out = fixring(&["hilbert-verify", "--n", "4", "--mode", "both", "--timing"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["mode"], "both");
    assert!(r["elapsed_ms"].is_u64());
}

#[test]
fn hilbert_verify_guards() {
    assert_eq!(fixring(&["hilbert-verify", "--n", "9"]).status.code(), Some(2));
    assert_eq!(fixring(&["hilbert-verify", "--n", "0"]).status.code(), Some(2));
    assert_eq!(fixring(&["hilbert-verify", "--n", "3", "--mode", "fast"]).status.code(), Some(2));
    assert_eq!(fixring(&["hilbert-verify"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let a = fixring(&["hilbert-verify", "--n", "4", "-q"]);
    let b = fixring(&["hilbert-verify", "--n", "4", "-q", "--threads", "1"]);
    assert_eq!(a.stdout, b.stdout);
    let a = fixring(&["hypertoric-verify", "--corpus", "--seed", "3", "-q"]);
    let b = fixring(&["hypertoric-verify", "--corpus", "--seed", "3", "-q"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn hilbert_table_rows() {
    let out = fixring(&["hilbert-table", "--n-max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1\t1\n2\t1\t1\n3\t1\t1\t1\n4\t1\t1\t2\t1\n");
    assert_eq!(fixring(&["hilbert-table", "--n-max", "13"]).status.code(), Some(2));
}

#[test]
fn fixed_ring_tables_agree() {
    let a = json(&fixring(&["fixed-ring-table", "--n", "4", "-q"]));
    let b = json(&fixring(&["fixed-ring-table", "--n", "4", "--oracle", "-q"]));
    assert_eq!(a, b);
    assert_eq!(a["basis"].as_array().unwrap().len(), 5);
}

#[test]
fn spaltenstein_file() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "inst.json", r#"{"lambda": [2, 0], "mu": [1, 1]}"#);
    let out = fixring(&["spaltenstein-verify", "--file", &good]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);

    let cube = write(dir.path(), "cube.json", r#"{"n": 3, "lambda": [3], "mu": [1, 1, 1]}"#);
    let out = fixring(&["spaltenstein-verify", "--file", &cube]);
    assert_eq!(json(&out)["dims"], serde_json::json!([1, 2, 2, 1]));

    let bad = write(dir.path(), "bad.json", r#"{"lambda": [2, 0], "mu": "#);
    assert_eq!(fixring(&["spaltenstein-verify", "--file", &bad]).status.code(), Some(2));
    let wrong = write(dir.path(), "wrong.json", r#"{"lambda": [1, 2], "mu": [1, 2]}"#);
    assert_eq!(fixring(&["spaltenstein-verify", "--file", &wrong]).status.code(), Some(2));
    assert_eq!(fixring(&["spaltenstein-verify", "--file", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn hypertoric_file_and_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = write(dir.path(), "p1.json", r#"{"vectors": [[1], [1]]}"#);
    let out = fixring(&["hypertoric-verify", "--file", &p1]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["pass"], true);
    assert_eq!(r["gale_dual"], serde_json::json!([[1], [-1]]));
    assert_eq!(r["sr_dims"], serde_json::json!([1, 1]));

    let out = fixring(&["hypertoric-verify", "--corpus", "-q"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out).as_array().unwrap().iter().all(|r| r["pass"] == true));

    let bad = write(dir.path(), "bad.json", r#"{"vectors": [[1, 0], [0, 1], [1, 1], [1, -1]]}"#);
    assert_eq!(fixring(&["hypertoric-verify", "--file", &bad]).status.code(), Some(2));
    let malformed = write(dir.path(), "m.json", r#"{"vectors": [[1.5]]}"#);
    assert_eq!(fixring(&["hypertoric-verify", "--file", &malformed]).status.code(), Some(2));
    assert_eq!(fixring(&["hypertoric-verify"]).status.code(), Some(2));
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = fixring(&["hilbert-verify", "--n", "2", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(r["n"], 2);
}
