//! End-to-end tests of the command-line surface: emission formats,
//! determinism, the result cache, and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ringsalem"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ringsalem-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn info_reports_ring_structure() {
    let out = run(&["info", "--ring", "zmod(4)"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["size"], 4);
    assert_eq!(json["unit_count"], 2);
    assert_eq!(json["radical_size"], 2);
}

#[test]
fn salem_json_is_byte_identical_across_runs() {
    let a = run(&[
        "salem",
        "--ring",
        "gf(5)",
        "--d",
        "2",
        "--t",
        "1",
        "--no-cache",
        "--workers",
        "2",
        "--seed",
        "42",
    ]);
    let b = run(&[
        "salem",
        "--ring",
        "gf(5)",
        "--d",
        "2",
        "--t",
        "1",
        "--no-cache",
        "--workers",
        "2",
        "--seed",
        "42",
    ]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let json: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert!(json["salem"].as_f64().unwrap() <= 2f64.sqrt() + 1e-6);
}

#[test]
fn csv_and_json_agree_to_12_digits() {
    let json_out = run(&[
        "salem",
        "--ring",
        "zmod(7)",
        "--d",
        "2",
        "--t",
        "3",
        "--no-cache",
    ]);
    let csv_out = run(&[
        "salem",
        "--ring",
        "zmod(7)",
        "--d",
        "2",
        "--t",
        "3",
        "--no-cache",
        "--format",
        "csv",
    ]);
    assert!(json_out.status.success() && csv_out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    let csv_text = stdout(&csv_out);
    let mut lines = csv_text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    for (field, json_key) in [
        ("norm_W", "norm_w"),
        ("norm_V", "norm_v"),
        ("salem", "salem"),
    ] {
        let idx = header.iter().position(|&h| h == field).unwrap();
        let csv_value: f64 = row[idx].parse().unwrap();
        let json_value = json[json_key].as_f64().unwrap();
        let rel = (csv_value - json_value).abs() / json_value.abs().max(1e-300);
        assert!(rel < 1e-11, "{field}: csv {csv_value} vs json {json_value}");
    }
}

#[test]
fn cache_round_trip_and_tol_separation() {
    let dir = temp_dir("cache");
    let cache = dir.to_str().unwrap();
    let first = run(&[
        "salem",
        "--ring",
        "gf(4)",
        "--d",
        "2",
        "--t",
        "1",
        "--cache-dir",
        cache,
    ]);
    let second = run(&[
        "salem",
        "--ring",
        "gf(4)",
        "--d",
        "2",
        "--t",
        "1",
        "--cache-dir",
        cache,
    ]);
    assert!(first.status.success() && second.status.success());
    assert_eq!(
        first.stdout, second.stdout,
        "cache hit must be byte-identical"
    );

    // Different tolerance is a different key: entry count grows.
    let before = std::fs::read_dir(&dir).unwrap().count();
    let third = run(&[
        "salem",
        "--ring",
        "gf(4)",
        "--d",
        "2",
        "--t",
        "1",
        "--cache-dir",
        cache,
        "--tol",
        "1e-8",
    ]);
    assert!(third.status.success());
    let after = std::fs::read_dir(&dir).unwrap().count();
    assert_eq!(after, before + 1, "changed tol must miss the cache");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn cache_env_var_override() {
    let dir = temp_dir("envcache");
    let out = bin()
        .args(["salem", "--ring", "gf(3)", "--d", "2", "--t", "1"])
        .env("RINGSALEM_CACHE_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let entries = std::fs::read_dir(&dir).unwrap().count();
    assert_eq!(entries, 1, "cache entry must land in the env-var directory");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn all_units_reports_orbit_and_deviation() {
    let out = run(&[
        "salem",
        "--ring",
        "gf(4)",
        "--d",
        "2",
        "--t",
        "all-units",
        "--no-cache",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["per_unit"].as_array().unwrap().len(), 3);
    assert!(json["max_relative_deviation"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn config_file_with_flag_precedence() {
    let dir = temp_dir("config");
    let path = dir.join("run.conf");
    std::fs::write(&path, "ring=gf(5)\nd=2\nt=2\nformat=json\n").unwrap();
    // Flag overrides the file's t.
    let out = run(&[
        "salem",
        "--config",
        path.to_str().unwrap(),
        "--t",
        "1",
        "--no-cache",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["ring"], "gf(5,1)");
    assert_eq!(json["t_label"], "1");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn edot_exits_zero_with_no_failures() {
    let out = run(&[
        "edot", "--ring", "gf(5)", "--d", "2", "--trials", "50", "--seed", "42",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["failures"], 0);
}

#[test]
fn graph_reports_structure() {
    let out = run(&["graph", "--q", "3", "--d", "2"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["regular_degree"], 3);
    assert_eq!(json["connected"], true);
}

#[test]
fn scan_emits_spec_columns() {
    let out = run(&[
        "scan",
        "--family",
        "gf(2);zmod(4)",
        "--d",
        "2",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "spec,size,radical_size,quotient_shape,d,t_label,salem,norm_W,method,residual,converged"
    );
    assert_eq!(lines.count(), 2);
}

#[test]
fn operator_dump_writes_adjacency_and_header() {
    let dir = temp_dir("dump");
    let base = dir.join("op");
    let base_str = base.to_str().unwrap();
    let out = run(&[
        "salem",
        "--ring",
        "gf(3)",
        "--d",
        "2",
        "--t",
        "1",
        "--no-cache",
        "--dump-operator",
        base_str,
    ]);
    assert!(out.status.success());
    let header: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(format!("{base_str}.json")).unwrap())
            .unwrap();
    assert_eq!(header["incidences"], 24);
    let csv = std::fs::read_to_string(format!("{base_str}.csv")).unwrap();
    assert_eq!(csv.lines().count(), 24);
    assert!(csv.lines().all(|l| l.split(',').count() == 2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn malformed_spec_fails_with_position() {
    let out = run(&["info", "--ring", "zmod(4"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("byte 6"), "{err}");
}

#[test]
fn non_prime_power_gf_fails_semantically() {
    let out = run(&["info", "--ring", "gf(6)"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not a prime power"), "{err}");
}

#[test]
fn scale_refusal_is_a_structured_error() {
    let out = run(&["salem", "--ring", "zmod(5000)", "--d", "2", "--no-cache"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("scale"), "{err}");
}

#[test]
fn nonunit_t_is_rejected() {
    let out = run(&[
        "salem",
        "--ring",
        "zmod(4)",
        "--d",
        "2",
        "--t",
        "2",
        "--no-cache",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not a unit"), "{err}");
}

#[test]
fn verify_suite_passes_end_to_end() {
    let out = run(&["verify", "--suite", "all", "--format", "text"]);
    assert!(
        out.status.success(),
        "verify failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.lines().count() >= 40);
    assert!(
        text.lines().all(|l| l.starts_with("[PASS]")),
        "some line not PASS"
    );
}
