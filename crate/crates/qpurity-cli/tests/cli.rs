//! End-to-end tests of the `qpurity` binary: exit codes, output schemas,
//! determinism, layered configuration, and unit conversion.

use std::path::PathBuf;
use std::process::{Command, Output};

const PI: f64 = std::f64::consts::PI;

const SCAN_HEADER: &str =
    "phi,r_plus,r_minus,p_prime_plus,p_prime_minus,P_cond_plus,P_cond_minus,P_avg,D_phi,I2_phi";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpurity"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().expect("terminated normally")
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qpurity-cli-{}-{tag}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).expect("temp dir");
    dir
}

/// Parse one named field out of the report's text form.
fn report_field(text: &str, name: &str) -> f64 {
    for line in text.lines() {
        let Some((key, value)) = line.split_once('=') else { continue };
        if key.trim() == name {
            return value.trim().parse().expect("numeric field");
        }
    }
    panic!("field {name} not found in report:\n{text}");
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .map(|line| {
            line.split(',')
                .map(|cell| {
                    if cell == "nan" {
                        f64::NAN
                    } else if cell == "true" {
                        1.0
                    } else if cell == "false" {
                        0.0
                    } else {
                        cell.parse().expect("numeric cell")
                    }
                })
                .collect()
        })
        .collect()
}

#[test]
fn report_prints_landmark_values() {
    let text = run_ok(&["report", "--theta", "1.0471975511965976", "--p", "0.5"]);
    assert!((report_field(&text, "discord") - 0.140286057063627).abs() < 1e-12);
    assert!((report_field(&text, "I2_min") - 0.15625).abs() < 1e-12);
    assert!((report_field(&text, "P_cond_max") - 0.90625).abs() < 1e-12);
    assert!((report_field(&text, "phi_star_cond") - PI / 2.0).abs() < 1e-12);
    let flag = text
        .lines()
        .find(|l| l.trim_start().starts_with("theta_above_transition"))
        .expect("transition flag present");
    assert!(flag.trim_end().ends_with("true"), "{flag}");
}

#[test]
fn report_degenerate_family_is_flagged_with_zero_measures() {
    let text = run_ok(&["report", "--theta", "0", "--p", "0.5"]);
    assert_eq!(report_field(&text, "discord"), 0.0);
    assert_eq!(report_field(&text, "I2_min"), 0.0);
    let flag = text
        .lines()
        .find(|l| l.trim_start().starts_with("degenerate"))
        .expect("degenerate flag present");
    assert!(flag.trim_end().ends_with("true"), "{flag}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(exit_code(&["report", "--theta", "5", "--p", "0.5"]), 2);
    assert_eq!(exit_code(&["report", "--theta", "1.0", "--p", "1.5"]), 2);
    assert_eq!(exit_code(&["scan", "--phi-count", "1"]), 2);
    assert_eq!(exit_code(&["scan", "--counts", "0"]), 2);
    assert_eq!(exit_code(&["no-such-command"]), 2);
}

#[test]
fn io_errors_exit_4() {
    assert_eq!(
        exit_code(&["scan", "--phi-count", "3", "--out", "/nonexistent-dir-qp/scan.csv"]),
        4
    );
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(exit_code(&["--help"]), 0);
    assert_eq!(exit_code(&["--version"]), 0);
    assert_eq!(exit_code(&["scan", "--help"]), 0);
}

#[test]
fn scan_schema_grid_and_determinism() {
    let args = ["scan", "--theta", "1.1", "--p", "0.62", "--phi-count", "61"];
    let text = run_ok(&args);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(SCAN_HEADER));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 61);
    assert!((rows[0][0] + PI).abs() < 1e-15);
    assert!((rows[60][0] - PI).abs() < 1e-15);
    assert!(rows.windows(2).all(|w| w[1][0] > w[0][0]), "phi monotone");
    for row in &rows {
        assert!((row[1] + row[2] - 1.0).abs() < 1e-12, "r_+ + r_- = 1");
    }
    // Analytic mode: byte-identical rerun.
    assert_eq!(text, run_ok(&args));
}

#[test]
fn scan_hits_exact_special_values_on_grid() {
    // Grid whose first point is exactly φ = θ: the − outcome projects onto a
    // pure state, so p'_− = 0 and P_cond_minus = 1 exactly.
    let text = run_ok(&[
        "scan",
        "--theta",
        "1.0471975511965976",
        "--p",
        "0.5",
        "--phi-start",
        "1.0471975511965976",
        "--phi-stop",
        "3.0",
        "--phi-count",
        "2",
    ]);
    let rows = csv_rows(&text);
    assert_eq!(rows[0][4], 0.0, "p_prime_minus exactly 0 at phi = theta");
    assert_eq!(rows[0][6], 1.0, "P_cond_minus exactly 1 at phi = theta");
    // φ = 0 leaves the weights untouched for any (θ, p).
    let text = run_ok(&[
        "scan", "--theta", "0.9", "--p", "0.37", "--phi-start", "0", "--phi-stop", "1",
        "--phi-count", "2",
    ]);
    let rows = csv_rows(&text);
    assert_eq!(rows[0][3], 0.37, "p_prime_plus exactly p at phi = 0");
    assert_eq!(rows[0][4], 0.37, "p_prime_minus exactly p at phi = 0");
}

#[test]
fn scan_json_mirrors_csv_schema() {
    let text = run_ok(&["scan", "--phi-count", "7", "--format", "json"]);
    let parsed: serde_json::Value = serde_json::from_str(&text).expect("valid json");
    let rows = parsed.as_array().expect("array of rows");
    assert_eq!(rows.len(), 7);
    let expected: Vec<&str> = SCAN_HEADER.split(',').collect();
    for row in rows {
        let keys: Vec<&str> = row.as_object().expect("object").keys().map(|k| k.as_str()).collect();
        assert_eq!(keys, expected, "JSON keys mirror CSV columns in order");
    }
}

#[test]
fn degrees_flag_converts_all_angle_inputs() {
    let radians = run_ok(&[
        "scan", "--theta", "1.0471975511965976", "--phi-start", "-3.141592653589793",
        "--phi-stop", "3.141592653589793", "--phi-count", "5",
    ]);
    let degrees = run_ok(&[
        "scan", "--theta", "60", "--phi-start", "-180", "--phi-stop", "180", "--phi-count", "5",
        "--degrees",
    ]);
    assert_eq!(radians, degrees, "degree inputs map onto the same radian grid");
}

#[test]
fn config_file_layering_and_flag_precedence() {
    let dir = temp_dir("config");
    let path = dir.join("run.cfg");
    std::fs::write(&path, "# comment\ntheta = 0.9\np = 0.55\nseed = 42\nphi_count = 5\n")
        .expect("write config");
    let cfg = path.to_str().expect("utf8 path");

    let text = run_ok(&["report", "--config", cfg]);
    assert_eq!(report_field(&text, "theta"), 0.9);
    assert_eq!(report_field(&text, "p"), 0.55);

    // Flags override file entries.
    let text = run_ok(&["report", "--config", cfg, "--p", "0.8"]);
    assert_eq!(report_field(&text, "theta"), 0.9);
    assert_eq!(report_field(&text, "p"), 0.8);

    // Unknown keys are usage errors.
    let bad = dir.join("bad.cfg");
    std::fs::write(&bad, "thetaa = 0.9\n").expect("write config");
    assert_eq!(exit_code(&["report", "--config", bad.to_str().expect("utf8")]), 2);
    // Missing config file is an I/O error.
    assert_eq!(
        exit_code(&["report", "--config", dir.join("absent.cfg").to_str().expect("utf8")]),
        4
    );
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn verify_passes_on_valid_states() {
    let text = run_ok(&["verify", "--theta", "1.1", "--p", "0.62"]);
    assert!(text.contains("all 10 checks passed"), "{text}");
    for line in text.lines().filter(|l| l.starts_with("[verify]")) {
        assert!(!line.contains("FAIL"), "{line}");
    }
    // Degenerate parameters shrink the list but still pass.
    let text = run_ok(&["verify", "--theta", "0", "--p", "0.5"]);
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn verify_skips_angle_checks_on_flat_objectives() {
    // Within ~3e-6 of θ = π the discord and conditional-purity φ-curves are
    // flat to ~1e-13: no double-precision minimizer can localize their
    // optimum angle, so those comparisons are reported SKIP (with the
    // measured curvature) instead of failing; value checks still run. The
    // deficit objective keeps an O(1) φ-dependence there and stays checked.
    let text = run_ok(&["verify", "--theta", "3.14159", "--p", "0.01"]);
    assert!(!text.contains("FAIL"), "{text}");
    let skipped: Vec<&str> = text.lines().filter(|l| l.contains("SKIP")).collect();
    assert_eq!(skipped.len(), 3, "{text}");
    for line in &skipped {
        assert!(line.contains("phi-curvature"), "{line}");
    }
    assert!(
        text.lines().any(|l| l.contains("deficit optimal angle vs phi-scan oracle")
            && l.contains("PASS")),
        "{text}"
    );
    assert!(text.contains("3 angle comparisons skipped"), "{text}");
    // Just above the flatness gate the angle checks still run and pass:
    // this is the shallowest curvature (≈ 7.6e-7) the optimizer polish is
    // tuned for, and nothing is skipped there.
    let text = run_ok(&["verify", "--theta", "0.07853981633974483", "--p", "0.5"]);
    assert!(text.contains("all 10 checks passed"), "{text}");
    assert!(!text.contains("SKIP"), "{text}");
}

#[test]
fn report_format_flag_yields_single_row_table() {
    let csv = run_ok(&["report", "--theta", "1.0", "--p", "0.6", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("theta,p,P_AB,"));
    let json = run_ok(&["report", "--theta", "1.0", "--p", "0.6", "--format", "json"]);
    let parsed: serde_json::Value = serde_json::from_str(&json).expect("valid json");
    assert_eq!(parsed.as_array().expect("rows").len(), 1);
    assert!(parsed[0]["degenerate"].is_boolean());
}

#[test]
fn figure_fig1_emits_deterministic_files() {
    let dir_a = temp_dir("fig1a");
    let dir_b = temp_dir("fig1b");
    for dir in [&dir_a, &dir_b] {
        run_ok(&["figure", "fig1", "--out", dir.to_str().expect("utf8")]);
    }
    for name in ["fig1_p050.csv", "fig1_p070.csv"] {
        let a = std::fs::read(dir_a.join(name)).expect("file emitted");
        let b = std::fs::read(dir_b.join(name)).expect("file emitted");
        assert_eq!(a, b, "{name} reruns byte-identical");
        let text = String::from_utf8(a).expect("utf8");
        assert_eq!(text.lines().next(), Some(SCAN_HEADER));
        assert_eq!(text.lines().count(), 242);
    }
    let _ = std::fs::remove_dir_all(&dir_a);
    let _ = std::fs::remove_dir_all(&dir_b);
}

#[test]
fn experiment_is_deterministic_and_reports_fidelity() {
    let dir = temp_dir("exp");
    let out = dir.join("exp.csv");
    let args = [
        "experiment", "--counts", "1000", "--phi-count", "5", "--seed", "123", "--out",
        out.to_str().expect("utf8"),
    ];
    let first = run_ok(&args);
    let table_first = std::fs::read_to_string(&out).expect("table written");
    assert!(first.contains("preparation tomography fidelity"));
    let fidelity_line = first
        .lines()
        .find(|l| l.starts_with("preparation tomography fidelity"))
        .expect("fidelity line");
    let value: f64 = fidelity_line
        .split('=')
        .nth(1)
        .expect("value")
        .split('(')
        .next()
        .expect("number")
        .trim()
        .parse()
        .expect("parses");
    assert!(value > 0.9 && value <= 1.0, "fidelity {value}");

    let second = run_ok(&args);
    let table_second = std::fs::read_to_string(&out).expect("table written");
    assert_eq!(first, second, "summary deterministic under seed");
    assert_eq!(table_first, table_second, "table deterministic under seed");
    assert!(table_first.starts_with("phi,r_plus_hat,r_minus_hat,"));
    let _ = std::fs::remove_dir_all(&dir);
}
