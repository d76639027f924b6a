//! End-to-end runs of the binary on the sample curves.

use std::path::PathBuf;
use std::process::{Command, Output};

fn curves() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../curves")
}

fn run(args: &[&str]) -> (Output, serde_json::Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_cusp-saito")).args(args).output().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(serde_json::Value::Null);
    (out, json)
}

fn curve(name: &str) -> String {
    curves().join(name).display().to_string()
}

#[test]
fn invariants_of_phi1() {
    let (out, json) = run(&["invariants", "--input", &curve("phi1.json")]);
    assert!(out.status.success());
    assert_eq!(json["basis"], serde_json::json!([7, 36, 123]));
    assert_eq!(json["saito_pair_dc"], serde_json::json!([64, 151]));
    assert_eq!(json["mu_minus_tau"], 9);
    assert!(json.get("forms").is_none());
}

#[test]
fn emitted_forms_are_printable() {
    let (out, json) = run(&["invariants", "--emit-forms", "--input", &curve("cusp_2_3.json")]);
    assert!(out.status.success());
    assert_eq!(json["forms"]["wt_last"], "2*y*dy - 3*x^2*dx");
}

#[test]
fn first_divisor_pair_of_phi2() {
    let (out, json) = run(&["saito-pair-d1", "--input", &curve("phi2.json")]);
    assert!(out.status.success());
    assert_eq!(json["saito_pair_d1"]["s1"], 3);
    assert_eq!(json["saito_pair_d1"]["s1_tilde"], 6);
}

#[test]
fn saito_basis_criterion() {
    let (out, json) = run(&["saito", "--input", &curve("cusp_5_11.json")]);
    assert!(out.status.success());
    assert_eq!(json["criterion"]["holds"], true);
}

#[test]
fn semimodule_table_flags_non_increasing_bases() {
    let (out, json) = run(&["semimodule", "--n", "5", "--m", "7", "--basis", "5,7,9"]);
    assert!(out.status.success());
    assert_eq!(json["is_increasing"], false);
    let (_, json) = run(&["semimodule", "--n", "5", "--m", "7", "--basis", "5,7"]);
    assert_eq!(json["table"]["rows"][0]["u_n"], 12);
    assert_eq!(json["table"]["rows"][0]["u_m"], 35);
}

#[test]
fn check_passes_on_every_sample_curve() {
    let (out, json) = run(&["check", "--seed", "11", "--input-dir", &curves().display().to_string()]);
    assert!(out.status.success(), "{json}");
    let reports = json.as_array().unwrap();
    assert_eq!(reports.len(), 5);
    assert!(reports.iter().all(|r| r["report"]["all_passed"] == true));
}

#[test]
fn exit_codes_separate_input_and_computation_errors() {
    let dir = std::env::temp_dir().join(format!("cusp-saito-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"schema":1,"n":4,"y":[[6,"1"]]}"#).unwrap();
    let (out, _) = run(&["invariants", "--input", &bad.display().to_string()]);
    assert_eq!(out.status.code(), Some(1));
    let (out, json) = run(&["invariants", "--truncation", "20", "--input", &curve("phi1.json")]);
    assert_eq!(out.status.code(), Some(2), "{json}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn pretty_output_is_a_table() {
    let (out, _) = run(&["--pretty", "invariants", "--input", &curve("phi1.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("saito pair D_C (64, 151)"));
}
