use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_macdonald-hc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn solve_is_normalized() {
    let out = bin(&["solve", "--q", "0.5", "--k", "0.4", "--lambda", "0.3,-0.3", "--N", "8"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["N"], 8);
    let c0 = &v["coeffs"][0];
    assert_eq!(c0["p"], serde_json::json!([0]));
    assert_eq!((c0["re"].as_f64(), c0["im"].as_f64()), (Some(1.0), Some(0.0)));
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 9);
    // ModeA coefficient has a q-Gamma pole at this spectral point
    assert!(v["leading_coefficient_modeA"].is_null());
}

#[test]
fn verify_defaults_pass() {
    let out = bin(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 2);
    for c in checks {
        assert!(c["residual"].as_f64().unwrap() < 1e-8);
    }
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_three_variables() {
    let out = bin(&["verify", "--lambda", "0.31,-0.11,-0.2", "--w", "3,1,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["checks"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_reports_failure() {
    let out = bin(&["verify", "--N", "2", "--tol", "1e-14"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn macpoly_two_variables() {
    let out = bin(&["macpoly", "--lambda", "2,0", "--q", "0.5", "--k", "0.4"]);
    assert!(out.status.success());
    let v = json(&out);
    let (q, t) = (0.5f64, 0.5f64.powf(0.4));
    let want = (1.0 - t) * (1.0 + q) / (1.0 - t * q);
    let terms = v["terms"].as_array().unwrap();
    let mid = terms.iter().find(|t| t["exp"] == serde_json::json!([1, 1])).unwrap();
    assert!((mid["re"].as_f64().unwrap() - want).abs() < 1e-12);
    assert_eq!(terms.len(), 3);
}

#[test]
fn connect_matrix_shape() {
    let out = bin(&["connect", "--lambda", "0.31,-0.11,-0.2", "--points", "1,1.7+0.2i,2.9", "--index", "2"]);
    assert!(out.status.success());
    let m = &json(&out)["matrices"][0];
    assert_eq!(m["i"], 2);
    assert_eq!(m["w"], serde_json::json!([1, 2, 3]));
    assert!(m["entries"][1][1]["re"].is_number());
    assert!(m["ratio"]["im"].as_f64().unwrap() > 0.0);
}

#[test]
fn csv_has_header_and_rows() {
    let out = bin(&["solve", "--N", "4", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p,re,im");
    assert_eq!(lines.len(), 6);
    assert!(lines[1].starts_with("0,1.0000000000000000e0,"));
}

#[test]
fn output_is_deterministic() {
    let args = ["macpoly", "--lambda", "2,1,0", "--seed", "7"];
    let (a, b) = (bin(&args), bin(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let args = ["eval", "--lambda", "0.31,-0.11,-0.2", "--points", "1,8,64;1+1i,5,30"];
    assert_eq!(bin(&args).stdout, bin(&args).stdout);
}

#[test]
fn error_exit_codes() {
    for (args, code, kind) in [
        (vec!["solve", "--q", "1.2"], 2, "domain"),
        (vec!["eval", "--points", "2,1"], 2, "zone"),
        (vec!["solve", "--lambda", "0.3,-0.2"], 2, "domain"),
        (vec!["connect", "--lambda", "0.5,-0.5", "--points", "1.3,1"], 3, "resonance"),
        (vec!["solve", "--bogus"], 2, "usage"),
        (vec!["macpoly", "--lambda", "1.5,0"], 2, "domain"),
    ] {
        let out = bin(&args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        let v = json(&out);
        assert_eq!(v["error"]["kind"], kind, "{args:?}");
        assert_eq!(v.as_object().unwrap().len(), 1);
    }
}

#[test]
fn config_file_with_overrides() {
    let dir = std::env::temp_dir().join(format!("mhc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.json");
    std::fs::write(&path, r#"{"command": "solve", "lambda": [0.2, -0.2], "N": 3}"#).unwrap();
    let out = bin(&["--config", path.to_str().unwrap(), "--N", "5"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["N"], 5);
    assert_eq!(v["lambda"][0]["re"], 0.2);
    std::fs::write(&path, "{not json").unwrap();
    let out = bin(&["--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "config");
    std::fs::remove_dir_all(&dir).unwrap();
}
