use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use tateres_cli::main_with_args;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["tateres"];
    full.extend_from_slice(args);
    let (code, out) = main_with_args(full);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("not JSON ({e}): {out}")))
}

#[test]
fn residue_classical() {
    let (code, v) = run(&["residue", "--form", "t1^-1 ; t1"]);
    assert_eq!(code, 0);
    assert_eq!(v["residue"], "1");
    assert_eq!(v["oracle"], "1");
    assert_eq!(v["agrees"], true);
}

#[test]
fn residue_from_file() {
    let (code, v) = run(&["residue", "--input", &data("form.txt")]);
    assert_eq!(code, 0);
    assert_eq!(v["n"], 2);
    assert_eq!(v["residue"], "1");
}

#[test]
fn residue_parse_error() {
    let (code, v) = run(&["residue", "--form", "t1^^2"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!(v["error"]["offset"], 3);
}

#[test]
fn residue_arity_error() {
    let (code, v) = run(&["residue", "--form", "t1"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "arity");
}

#[test]
fn cocycle_chains() {
    let (code, v) = run(&["cocycle", "--input", &data("kac_moody.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], "12");
    assert_eq!(v["flavor"], "multiloop");
    let (code, v) = run(&["cocycle", "--input", &data("heisenberg.json"), "--flavor", "scalar"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], "-3");
}

#[test]
fn cocycle_bad_algebra() {
    let (code, v) = run(&["cocycle", "--input", &data("kac_moody.json"), "--algebra", &data("bad_order.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "format");
    let (code, v) = run(&["cocycle", "--input", &data("missing.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "read");
}

#[test]
fn verify_cube_passes() {
    let (code, v) = run(&["verify", "--suite", "cube", "--n", "2", "--seed", "42", "--trials", "50"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_all_small() {
    let (code, v) = run(&["verify", "--n", "1", "--trials", "5", "--algebra", &data("sl2.json")]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["suites"].as_array().unwrap().len(), 5);
}

#[test]
fn verify_rejects_large_n() {
    let (code, v) = run(&["verify", "--n", "5"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "range");
}

#[test]
fn virasoro_rows() {
    let (code, v) = run(&["virasoro", "--max-m", "3"]);
    assert_eq!(code, 0);
    let values: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["0", "-1", "-4"]);
}

#[test]
fn deterministic_output() {
    let args = ["tateres", "verify", "--suite", "cocycle", "--n", "1", "--seed", "7", "--trials", "10"];
    assert_eq!(main_with_args(args), main_with_args(args));
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_tateres");
    let ok = Command::new(exe).args(["residue", "--form", "t1^-1 ; t1", "--text"]).output().unwrap();
    assert!(ok.status.success());
    assert!(String::from_utf8_lossy(&ok.stdout).contains("residue = 1"));
    let bad = Command::new(exe).args(["residue", "--form", "t1 ;"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
