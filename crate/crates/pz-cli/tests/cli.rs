//! End-to-end tests of the `pz` binary: exit codes, JSON contents for the
//! landmark inputs, and output determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn pz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = pz(args);
    assert!(out.status.success(), "{args:?}: {:?}", out);
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn classify_unstable_focus_case() {
    let rep = json(&["classify", "1", "1", "3"]);
    assert_eq!(rep["schema_version"], 1);
    assert_eq!(rep["region"]["tag"], "B1");
    assert_eq!(rep["table_rho"]["value"], -1.0);
    assert_eq!(rep["on_bifurcation_set"], false);
    let fam = &rep["families"][0];
    assert_eq!(fam["tag"], "F9");
    assert_eq!(fam["equilibria"][0]["kind"], "unstable focus");
    assert_eq!(fam["galois"]["group"], "multiplicative (Gm)");
    assert_eq!(
        fam["infinity"]["points"].as_array().map(Vec::len),
        Some(0),
        "no boundary equilibria for the focus case"
    );
}

#[test]
fn classify_f1_row() {
    let rep = json(&["classify", "0", "0", "4"]);
    let fam = &rep["families"][0];
    assert_eq!(fam["tag"], "F1");
    assert_eq!(rep["table_rho"]["value"], -4.0);
    assert_eq!(rep["table_rho"]["exact"], "-4");
    assert_eq!(fam["galois"]["group"], "multiplicative (Gm)");
}

#[test]
fn classify_flags_the_bifurcation_set() {
    let rep = json(&["classify", "1", "-1", "0"]);
    assert_eq!(rep["on_bifurcation_set"], true);
    assert_eq!(rep["region"]["tag"], "B (bifurcation set)");
    assert_eq!(rep["region"]["predicted_kind"], "center");
}

#[test]
fn exit_codes() {
    assert_eq!(pz(&["classify", "0", "0", "0"]).status.code(), Some(2));
    assert_eq!(pz(&["classify", "x", "1", "1"]).status.code(), Some(3));
    assert_eq!(pz(&["classify", "1/0", "1", "1"]).status.code(), Some(3));
    assert_eq!(pz(&["classify", "1", "1"]).status.code(), Some(3));
    assert_eq!(pz(&["verify", "0", "0", "0"]).status.code(), Some(2));
    let out = pz(&["portrait", "1", "1", "1", "--out", "/nonexistent/x.svg"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(
        pz(&["darboux", "1", "1", "1", "--constant", "0"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn float_literals_warn_on_stderr() {
    let out = pz(&["classify", "0.5", "1", "1"]);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("measure-zero"), "stderr: {err}");
    let rep: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep["input"]["exact"], false);
    assert_eq!(rep["input"]["a"]["exact"], serde_json::Value::Null);
}

#[test]
fn negative_rational_literals_parse() {
    let rep = json(&["classify", "1/2", "-1/2", "3/4"]);
    assert_eq!(rep["on_bifurcation_set"], true);
    assert_eq!(rep["input"]["b"]["exact"], "-1/2");
}

#[test]
fn classify_output_is_byte_identical() {
    let a = pz(&["classify", "1", "1", "3"]);
    let b = pz(&["classify", "1", "1", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn portrait_is_byte_identical_and_well_formed() {
    let dir = std::env::temp_dir();
    let p1: PathBuf = dir.join("pz_cli_test_portrait_1.svg");
    let p2: PathBuf = dir.join("pz_cli_test_portrait_2.svg");
    for p in [&p1, &p2] {
        let out = pz(&["portrait", "1", "1", "1", "--out", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let s1 = std::fs::read(&p1).unwrap();
    let s2 = std::fs::read(&p2).unwrap();
    assert_eq!(s1, s2);
    let text = String::from_utf8(s1).unwrap();
    assert!(text.starts_with("<svg"));
    assert!(text.contains("viewBox=\"-1.1 -1.1 2.2 2.2\""));
    assert!(text.ends_with("</svg>\n"));
    let _ = std::fs::remove_file(&p1);
    let _ = std::fs::remove_file(&p2);
}

#[test]
fn portrait_csv_has_the_trajectory_header() {
    let dir = std::env::temp_dir();
    let svg = dir.join("pz_cli_test_csv.svg");
    let csv = dir.join("pz_cli_test_csv.csv");
    let out = pz(&[
        "portrait",
        "1",
        "1",
        "3",
        "--out",
        svg.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("t,x,y\n"));
    let first_row = text.lines().nth(1).unwrap();
    // 17 significant digits in scientific notation.
    assert!(
        first_row.contains("e0") || first_row.contains("e-"),
        "{first_row}"
    );
    let _ = std::fs::remove_file(&svg);
    let _ = std::fs::remove_file(&csv);
}

#[test]
fn verify_passes_on_the_landmark_cases() {
    for (args, expect) in [
        (vec!["verify", "1", "1", "1"], 0),
        (vec!["verify", "1", "1", "2"], 0),
        (vec!["verify", "1", "1", "3"], 0),
        (vec!["verify", "0", "2", "3"], 0),
    ] {
        let out = pz(&args);
        assert_eq!(
            out.status.code(),
            Some(expect),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
    let out = pz(&["verify", "1", "1", "2"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("SKIP darboux identities"), "{text}");
}

#[test]
fn galois_real_form_for_oscillatory_case() {
    let rep = json(&["galois", "1", "1", "3", "--real-form"]);
    let fam = &rep["families"][0];
    assert_eq!(fam["galois"]["rho"]["value"], -1.0);
    assert_eq!(fam["real_form_basis"][0], "exp(2*t)*cos(1*t)");
    assert_eq!(fam["real_form_basis"][1], "exp(2*t)*sin(1*t)");
}

#[test]
fn darboux_accepts_a_complex_rho_override() {
    let rep = json(&["darboux", "1", "1", "1", "--rho", "2,1"]);
    assert_eq!(rep["set"]["rho"]["re"], 2.0);
    assert_eq!(rep["set"]["rho"]["im"], 1.0);
    let drift = rep["residuals"]["first_integral_drift"].as_f64().unwrap();
    assert!(drift < 1e-6, "drift {drift}");
    let cof = rep["residuals"]["cofactor_max"].as_f64().unwrap();
    assert!(cof < 1e-10);
}

#[test]
fn darboux_rejects_rho_zero() {
    let out = pz(&["darboux", "1", "1", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("ρ = 0"), "{err}");
}
