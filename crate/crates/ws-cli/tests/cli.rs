//! End-to-end tests of the `ws` binary: output schema, exit codes,
//! formats, determinism, and the serialization round trip.

use assert_cmd::Command;
use predicates::prelude::*;

fn ws() -> Command {
    let mut c = Command::cargo_bin("ws").unwrap();
    c.env_remove("WS_CONFIG");
    c
}

fn json_stdout(args: &[&str]) -> serde_json::Value {
    let out = ws().args(args).assert().success();
    serde_json::from_slice(&out.get_output().stdout).unwrap()
}

#[test]
fn eval_function_json_schema() {
    let v = json_stdout(&[
        "eval", "--kind", "jj", "--mu", "0.5", "--nu", "0.5", "--rho=-0.5", "--x", "2.0",
    ]);
    assert_eq!(v["schema"], "ws-kernel/1");
    assert_eq!(v["classification"], "function");
    assert_eq!(v["result"]["regime"], "function");
    let val = &v["result"]["scalar"]["value"];
    assert!(val["re"].is_f64() && val["im"].is_f64(), "{val}");
}

#[test]
fn eval_distribution_term_list() {
    let v = json_stdout(&[
        "eval", "--kind", "jj", "--mu", "0", "--nu", "0", "--rho", "1", "--x-symbolic",
    ]);
    assert_eq!(v["classification"], "dist_integer");
    assert_eq!(v["result"]["regime"], "special_rho1");
    assert!(v["result"]["scalar"].is_null());
    let terms = v["result"]["dist"]["terms"].as_array().unwrap();
    assert!(!terms.is_empty());
    // every term has a basis tag and a {re, im} scale somewhere inside
    for t in terms {
        assert!(t["basis"].is_string() || t["basis"].is_object(), "{t}");
    }
}

#[test]
fn validity_violation_exits_2() {
    ws().args([
        "eval", "--kind", "jj", "--mu", "0", "--nu", "0", "--rho=-2", "--x", "2.0",
    ])
    .assert()
    .code(2)
    .stdout(predicate::str::contains("\"kind\": \"validity\""));
}

#[test]
fn bad_bump_exits_2() {
    ws().args([
        "pair", "--mu", "0", "--nu", "0", "--rho", "1", "--center", "0.3", "--width", "0.4",
    ])
    .assert()
    .code(2);
}

#[test]
fn pair_check_closure_passes() {
    let out = ws()
        .args([
            "pair", "--mu", "0", "--nu", "0", "--rho", "1", "--center", "1.0", "--width", "0.4",
            "--check",
        ])
        .assert()
        .success();
    let v: serde_json::Value = serde_json::from_slice(&out.get_output().stdout).unwrap();
    // ⟨WS(0,0,1), φ⟩ = φ(1) = e^{-1}
    let re = v["value"]["re"].as_f64().unwrap();
    assert!((re - (-1.0f64).exp()).abs() < 1e-8, "{re}");
    assert!(v["abs_diff"].as_f64().unwrap() < 1e-6);
}

#[test]
fn check_discrepancy_exits_5() {
    // an unreachable tolerance forces the discrepancy path
    ws().args([
        "pair", "--mu", "0", "--nu", "0", "--rho", "1", "--center", "1.0", "--width", "0.4",
        "--check", "--check-tol", "1e-15",
    ])
    .assert()
    .code(5)
    .stdout(predicate::str::contains("check-discrepancy"));
}

#[test]
fn eval_csv_format() {
    let out = ws()
        .args([
            "eval", "--format", "csv", "--kind", "jj", "--mu", "0.5", "--nu", "0.5", "--rho=-0.5",
            "--x", "2.0",
        ])
        .assert()
        .success();
    let text = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("kind,mu_re,mu_im"));
    let row = lines.next().unwrap();
    assert_eq!(row.split(',').count(), 12, "{row}");
}

#[test]
fn kernel_csv_grid_is_symmetric() {
    let out = ws()
        .args([
            "kernel", "projection", "--mu", "0.5", "--window", "0,1", "--x-grid", "0.5:2:3",
            "--format", "csv",
        ])
        .assert()
        .success();
    let text = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    let mut cells = std::collections::BTreeMap::new();
    for line in text.lines().skip(1) {
        let f: Vec<f64> = line.split(',').map(|t| t.parse().unwrap()).collect();
        cells.insert((f[0].to_bits(), f[1].to_bits()), f[2]);
    }
    assert_eq!(cells.len(), 9);
    for (&(x, y), &v) in &cells {
        assert_eq!(v, cells[&(y, x)]);
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = [
        "eval", "--kind", "hplus-j", "--mu", "1,0.25", "--nu", "0.5", "--rho=-0.75", "--x", "2.0",
    ];
    let a = ws().args(args).assert().success();
    let b = ws().args(args).assert().success();
    assert_eq!(a.get_output().stdout, b.get_output().stdout);
}

#[test]
fn round_trip_dist_json_re_pairs_identically() {
    let dir = tempfile::tempdir().unwrap();
    let evaled = dir.path().join("eval.json");
    ws().args([
        "eval", "--kind", "jj", "--mu", "0.5", "--nu", "1.5", "--rho", "1.5", "--x-symbolic",
        "--out", evaled.to_str().unwrap(),
    ])
    .assert()
    .success();
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&evaled).unwrap()).unwrap();
    let dist_path = dir.path().join("dist.json");
    std::fs::write(&dist_path, v["result"]["dist"].to_string()).unwrap();

    let direct = json_stdout(&[
        "pair", "--mu", "0.5", "--nu", "1.5", "--rho", "1.5", "--center", "1.0", "--width", "0.4",
    ]);
    let reloaded = json_stdout(&[
        "pair", "--mu", "0.5", "--nu", "1.5", "--rho", "1.5", "--center", "1.0", "--width", "0.4",
        "--dist-json", dist_path.to_str().unwrap(),
    ]);
    let d = (direct["value"]["re"].as_f64().unwrap() - reloaded["value"]["re"].as_f64().unwrap())
        .abs()
        + (direct["value"]["im"].as_f64().unwrap() - reloaded["value"]["im"].as_f64().unwrap())
            .abs();
    assert!(d < 1e-12, "round trip drift {d}");
}

#[test]
fn selftest_passes() {
    ws().arg("selftest")
        .assert()
        .success()
        .stdout(predicate::str::contains("FAIL").not());
}

#[test]
fn config_file_applies_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("ws.json");
    std::fs::write(&cfg, r#"{"format": "csv"}"#).unwrap();
    // config selects csv
    let out = ws()
        .args([
            "eval", "--config", cfg.to_str().unwrap(), "--kind", "jj", "--mu", "0.5", "--nu",
            "0.5", "--rho=-0.5", "--x", "2.0",
        ])
        .assert()
        .success();
    assert!(out.get_output().stdout.starts_with(b"kind,"));
    // explicit flag overrides it
    let out = ws()
        .args([
            "eval", "--config", cfg.to_str().unwrap(), "--format", "json", "--kind", "jj", "--mu",
            "0.5", "--nu", "0.5", "--rho=-0.5", "--x", "2.0",
        ])
        .assert()
        .success();
    assert!(out.get_output().stdout.starts_with(b"{"));
    // unknown keys are rejected, not silently ignored
    std::fs::write(&cfg, r#"{"formatt": "csv"}"#).unwrap();
    ws().args([
        "eval", "--config", cfg.to_str().unwrap(), "--kind", "jj", "--mu", "0.5", "--nu", "0.5",
        "--rho=-0.5", "--x", "2.0",
    ])
    .assert()
    .code(2);
}

#[test]
fn ws_config_env_is_the_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("ws.json");
    std::fs::write(&cfg, r#"{"format": "text"}"#).unwrap();
    let out = Command::cargo_bin("ws")
        .unwrap()
        .env("WS_CONFIG", cfg.to_str().unwrap())
        .args([
            "eval", "--kind", "jj", "--mu", "0.5", "--nu", "0.5", "--rho=-0.5", "--x", "2.0",
        ])
        .assert()
        .success();
    assert!(out.get_output().stdout.starts_with(b"value = "));
}
