use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn neil(args: &[&str], config: Option<&str>) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_neil"));
    cmd.args(args).arg("--out").arg(&out);
    if let Some(text) = config {
        let path = dir.path().join("config.json");
        std::fs::write(&path, text).unwrap();
        cmd.arg("--config").arg(&path);
    }
    let status = cmd.status().unwrap();
    let code = status.code().unwrap();
    let value = if Path::new(&out).exists() {
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap()
    } else {
        Value::Null
    };
    (code, value)
}

fn c(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn naimark_line_example_round_trips() {
    let cfg = r#"{"a_list": [[[[0.5,0]]], [[[0.5,0]]]], "b_list": [[[[0.5,0]]], [[[0.5,0]]]]}"#;
    let (code, v) = neil(&["naimark"], Some(cfg));
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    let r = &v["result"];
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for j in 0..2 {
        let (re, im) = c(&r["v"][j][0]);
        assert!((re - s).abs() < 1e-15 && im == 0.0);
        // V* P_j V = |v_j|^2 for a single column.
        assert!((re * re + im * im - 0.5).abs() < 1e-12);
    }
    assert!(r["check"]["max"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn variety_sqrt_two_pair_fails() {
    let cfg = r#"{"s": [[[0,0],[1,0]],[[0,0],[0,0]]], "t": [[[0,0],[0,1]],[[0,0],[0,0]]]}"#;
    let (code, v) = neil(&["variety"], Some(cfg));
    assert_eq!(code, 2);
    let r = &v["result"];
    assert_eq!(r["verdict"], "fail");
    let (re, im) = c(&r["witness"]);
    assert!((re - 0.5).abs() < 1e-12 && (im - 0.5).abs() < 1e-12);
    assert!((r["max_norm"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-8);
    assert_eq!(r["profile"].as_array().unwrap().len(), 720);
}

#[test]
fn variety_opposite_unitaries_pass() {
    let cfg = r#"{"s": [[[0,0],[1,0]],[[1,0],[0,0]]], "t": [[[0,0],[-1,0]],[[-1,0],[0,0]]]}"#;
    let (code, v) = neil(&["variety", "--angles", "90"], Some(cfg));
    assert_eq!(code, 0);
    assert!((v["result"]["max_norm"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn ccverify_example_has_no_deviations() {
    let (code, v) = neil(&["ccverify"], None);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert!(r["max_deviation"].as_f64().unwrap() <= 1e-10);
    assert_eq!(r["obstruction"]["max_overlap"].as_f64().unwrap(), 0.0);
    assert_eq!(c(&r["obstruction"]["cube_overlap"]), (1.0, 0.0));
}

#[test]
fn equal_blaschke_zeros_are_rejected() {
    let (code, v) = neil(&["counterexample"], Some(r#"{"lambda1": [0.5,0], "lambda2": [0.5,0]}"#));
    assert_eq!(code, 1);
    assert!(v.is_null());
}

#[test]
fn bad_flags_are_input_errors() {
    assert_eq!(neil(&["variety", "--tol", "-1"], Some(r#"{"s": [[[0,0]]], "t": [[[0,0]]]}"#)).0, 1);
    assert_eq!(neil(&["pick", "--grid", "3by4"], None).0, 1);
    assert_eq!(neil(&["pick"], Some(r#"{"unknown": 1}"#)).0, 1);
    assert_eq!(neil(&["pick"], None).0, 1);
}

#[test]
fn diagonal_unitary_is_inconclusive() {
    let cfg = r#"{"u": [[[1,0],[0,0]],[[0,0],[1,0]]]}"#;
    let (code, v) = neil(&["counterexample", "--grid", "5x16"], Some(cfg));
    assert_eq!(code, 3);
    assert!(v["result"]["certificate"].is_null());
}

#[test]
fn pick_outcomes() {
    let feasible = r#"{"nodes": [[0.3,0.2]], "targets": [[0.5,0]]}"#;
    let (code, v) = neil(&["pick", "--grid", "4x8"], Some(feasible));
    assert_eq!(code, 0);
    assert_eq!(v["result"]["status"], "feasible");
    assert!(v["result"]["residual"].as_f64().unwrap() <= 1e-7);

    // Classical Pick matrix of this data is indefinite.
    let infeasible = r#"{"nodes": [[0.5,0],[-0.5,0]], "targets": [[0.9,0],[-0.9,0]]}"#;
    let (code, v) = neil(&["pick", "--grid", "5x16"], Some(infeasible));
    assert_eq!(code, 2);
    assert_eq!(v["result"]["revalidated"], true);
    assert!(v["result"]["validation"]["worst_margin"].as_f64().unwrap() >= -1e-6);
}

#[test]
fn cone_with_explicit_target() {
    let cfg = r#"{"sample_set": [[0.3,0.2],[-0.1,0.4]], "target": [[[0.0,0]],[[0,0],[0.0,0]]]}"#;
    let (code, v) = neil(&["cone", "--grid", "3x8"], Some(cfg));
    assert_eq!(code, 0);
    assert_eq!(v["result"]["measure"].as_array().unwrap().len(), 0);

    let negative = r#"{"sample_set": [[0.3,0.2],[-0.1,0.4]], "target": [[[-1.0,0]],[[0,0],[-1.0,0]]]}"#;
    let (code, v) = neil(&["cone", "--grid", "3x8"], Some(negative));
    assert_eq!(code, 2);
    assert!(v["result"]["certificate"]["violation"].as_f64().unwrap() <= -1e-4);
}

#[test]
fn output_is_deterministic() {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_neil")).args(["naimark", "--seed", "11"]).output().unwrap();
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run(), run());
    let (_, v) = neil(&["naimark", "--seed", "11"], None);
    assert_eq!(v["config"]["seed"], 11);
}

#[test]
fn config_is_embedded_in_certificates() {
    let (code, v) = neil(&["noxy", "--grid", "4x16"], None);
    assert_eq!(code, 0);
    assert_eq!(v["config"]["grid"]["radii"], 4);
    assert_eq!(v["config"]["restriction"][1], "inf");
    assert_eq!(v["result"]["witness_exceeds"], true);
}
