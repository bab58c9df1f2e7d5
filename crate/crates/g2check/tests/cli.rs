use std::process::Command;

use serde_json::Value;

fn g2check(args: &[&str]) -> (i32, String, Value) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let output = Command::new(env!("CARGO_BIN_EXE_g2check"))
        .args(args)
        .arg("--out")
        .arg(&out)
        .output()
        .expect("binary runs");
    let json = std::fs::read_to_string(&out).map(|s| serde_json::from_str(&s).unwrap()).unwrap_or(Value::Null);
    (output.status.code().unwrap(), String::from_utf8_lossy(&output.stdout).into_owned(), json)
}

#[test]
fn algebra_exact_passes_with_zero_residuals() {
    let (code, stdout, json) = g2check(&["algebra", "--seed", "7", "--trials", "100", "--backend", "exact"]);
    assert_eq!(code, 0, "{stdout}");
    assert_eq!(json["report_version"], 1);
    let checks = json["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        assert_eq!(c["status"], "pass");
        assert!(c["paperAnchor"].is_string());
        if let Some(r) = c["residual"].as_f64() {
            assert_eq!(r, 0.0, "{}", c["name"]);
        }
    }
    let names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn function_spectrum_at_level_one() {
    let (code, stdout, json) = g2check(&["spectra", "--bundle", "functions", "--max-level", "1"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("7.000000000"));
    let lines = json["spectrum"]["eigenvalues"].as_array().unwrap();
    let seven = lines.iter().find(|l| (l["value"].as_f64().unwrap() - 7.0).abs() < 1e-8).unwrap();
    assert_eq!(seven["multiplicity"], 8);
}

#[test]
fn theorem_b_passes_with_no_rarita_schwinger_fields() {
    let (code, _, json) = g2check(&["theorem", "--which", "B", "--max-level", "3"]);
    assert_eq!(code, 0);
    assert_eq!(json["totals"]["ker_q"], 0);
    assert_eq!(json["totals"]["rs_fields"], 0);
    assert_eq!(json["passed"], true);
}

#[test]
fn float_curvature_and_reports_are_reproducible() {
    let (code, _, first) = g2check(&["curvature", "--backend", "float", "--tol", "1e-10"]);
    assert_eq!(code, 0);
    let (_, _, second) = g2check(&["curvature", "--backend", "float", "--tol", "1e-10"]);
    assert_eq!(first, second);
}

#[test]
fn configuration_errors_exit_two() {
    assert_eq!(g2check(&["algebra", "--trials", "0"]).0, 2);
    assert_eq!(g2check(&["algebra", "--tol", "-1"]).0, 2);
    assert_eq!(g2check(&["spectra", "--bundle", "nonsense"]).0, 2);
}

#[test]
fn corrupt_cache_is_a_construction_error() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let (code, _, _) = g2check(&["spectra", "--bundle", "spinors", "--max-level", "1", "--cache-dir", cache]);
    assert_eq!(code, 0);
    let file = dir.path().join("irrep-0-0-1.json");
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    v["checksum"] = Value::String("0".repeat(64));
    std::fs::write(&file, v.to_string()).unwrap();
    let (code, _, _) = g2check(&["spectra", "--bundle", "spinors", "--max-level", "1", "--cache-dir", cache]);
    assert_eq!(code, 2);
}
