use std::process::Command;

use ncpfiber_cli::{run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn invoke(args: &[&str]) -> (i32, Value, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ncpfiber").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    let text = String::from_utf8(out).unwrap();
    let doc = if code == EXIT_USAGE || text.is_empty() { Value::Null } else { serde_json::from_str(&text).unwrap() };
    (code, doc, String::from_utf8(err).unwrap())
}

#[test]
fn dihedral_fp_homology() {
    let (code, doc, _) = invoke(&["homology", "--space", "fp", "I2_7"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["betti"], serde_json::json!([1, 6]));
}

#[test]
fn dihedral_fq_homology() {
    let (code, doc, _) = invoke(&["homology", "--space", "fq", "I2_4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["betti"], serde_json::json!([1, 9]));
}

#[test]
fn lcc_homology_space() {
    let (code, doc, _) = invoke(&["homology", "--space", "lcc", "A3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["betti"], serde_json::json!([1, 2, 2]));
}

#[test]
fn verify_lattice() {
    let (code, doc, _) = invoke(&["verify", "lattice", "A3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc, serde_json::json!({"schema": 1, "is_lattice": true, "elements": 14}));
}

#[test]
fn verify_morse_with_window_flag() {
    let (code, doc, _) = invoke(&["verify", "morse", "--group", "A3", "--window", "-4:4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["is_acyclic"], true);
    assert_eq!(doc["critical"], serde_json::json!([3, 18, 16]));
}

#[test]
fn verify_incidence_and_cone() {
    assert_eq!(invoke(&["verify", "incidence", "B3"]).0, EXIT_OK);
    let (code, doc, _) = invoke(&["verify", "cone", "A3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["checks"].as_array().unwrap().len(), 3);
}

#[test]
fn monodromy_report() {
    let (code, doc, _) = invoke(&["monodromy", "--group", "A3", "--space", "fp"]);
    assert_eq!(code, EXIT_OK);
    let orders: Vec<Value> = doc["degrees"].as_array().unwrap().iter().map(|d| d["order"].clone()).collect();
    assert_eq!(orders, vec![Value::from(1), Value::from(6), Value::from(4)]);
    let (code, doc, _) = invoke(&["monodromy", "--space", "fq", "I2_3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["intertwines"], true);
}

#[test]
fn tiny_cap_fails_verification() {
    let (code, doc, _) = invoke(&["monodromy", "A3", "--cap", "2"]);
    assert_eq!(code, EXIT_FAILED);
    assert_eq!(doc["finite_order"], false);
}

#[test]
fn lcc_report() {
    let (code, doc, _) = invoke(&["lcc", "--group", "B3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["matches_fp"], true);
    assert_eq!(doc["pieces"].as_array().unwrap().len(), 3);
}

#[test]
fn exports() {
    let (code, doc, _) = invoke(&["ncp", "export", "A3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["elements"].as_array().unwrap().len(), 14);
    let (code, doc, _) = invoke(&["fiber", "build", "--space", "fq", "I2_3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["dims"], serde_json::json!([6, 9]));
    let (_, doc, _) = invoke(&["group", "info", "B3"]);
    assert_eq!(doc["order"], 48);
    assert_eq!(doc["coxeter_number"], 6);
}

#[test]
fn custom_gamma() {
    let (code, doc, _) = invoke(&["verify", "lattice", "A3", "--gamma", "(1 3 2 4)"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["elements"], 14);
    let (code, _, err) = invoke(&["ncp", "export", "A3", "--gamma", "(1 2)"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("error"));
}

#[test]
fn usage_errors() {
    for args in [
        &["homology", "E8"][..],
        &["homology", "A0"],
        &["homology"],
        &["frobnicate", "A3"],
        &["verify", "morse", "A3", "--window", "3:1"],
        &["homology", "A3", "--group", "B3"],
        &["fiber", "build", "--space", "lcc", "A3"],
    ] {
        assert_eq!(invoke(args).0, EXIT_USAGE, "{args:?}");
    }
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let (_, a, _) = invoke(&["fiber", "build", "A3"]);
    let (_, b, _) = invoke(&["fiber", "build", "A3"]);
    assert_eq!(a, b);
    let path = std::env::temp_dir().join(format!("ncpfiber-cli-{}.json", std::process::id()));
    let (code, _, _) = invoke(&["fiber", "build", "A3", "--output", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, a);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ncpfiber");
    let ok = Command::new(bin).args(["verify", "lattice", "I2_5"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let first = Command::new(bin).args(["verify", "lattice", "I2_5"]).output().unwrap();
    assert_eq!(ok.stdout, first.stdout);
    let bad = Command::new(bin).args(["group", "info", "Z9"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}
