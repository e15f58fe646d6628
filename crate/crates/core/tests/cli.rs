//! End-to-end checks of the installed binary: exit codes, JSON output,
//! file input and output, and run-to-run determinism.

use std::process::{Command, Output};

fn logchern(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logchern"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn analyze_exit_code_contract() {
    let ok = logchern(&["analyze", "--poly", "y^2*z - x^3 - x^2*z"]);
    assert_eq!(ok.status.code(), Some(0));
    let stdout = String::from_utf8(ok.stdout).unwrap();
    assert!(stdout.contains("formula holds: true"));
    assert!(stdout.contains("mu_total = 1, tau_total = 1"));

    let fail = logchern(&["analyze", "--poly", "x^5 + x^2*y^2*z + y^5"]);
    assert_eq!(fail.status.code(), Some(1));
    let stdout = String::from_utf8(fail.stdout).unwrap();
    assert!(stdout.contains("formula holds: false"));

    let err = logchern(&["analyze", "--poly", "x^2"]);
    assert_eq!(err.status.code(), Some(2));
    let stderr = String::from_utf8(err.stderr).unwrap();
    assert!(stderr.contains("non-reduced or non-isolated singularities"));
}

#[test]
fn analyze_rejects_malformed_input_with_diagnostics() {
    let err = logchern(&["analyze", "--poly", "x^2 +"]);
    assert_eq!(err.status.code(), Some(2));
    let stderr = String::from_utf8(err.stderr).unwrap();
    assert!(stderr.contains("syntax error"));

    let err = logchern(&["analyze", "--poly", "x^2*w - y^3"]);
    assert_eq!(err.status.code(), Some(2));
    let stderr = String::from_utf8(err.stderr).unwrap();
    assert!(stderr.contains("unknown variable"));

    let err = logchern(&["analyze", "--poly", "x^2 + y"]);
    assert_eq!(err.status.code(), Some(2));
    let stderr = String::from_utf8(err.stderr).unwrap();
    assert!(stderr.contains("homogeneous"));
}

#[test]
fn analyze_reads_files_and_writes_reports() {
    let dir = std::env::temp_dir().join(format!("logchern-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("curve.txt");
    let output = dir.join("report.json");
    std::fs::write(&input, "y^2*z - x^3\n").unwrap();

    let run = logchern(&[
        "analyze",
        "--file",
        input.to_str().unwrap(),
        "--json",
        "--output",
        output.to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(report["degree"], 3);
    assert_eq!(report["mu_total"], 2);
    assert_eq!(report["formula_holds"], true);
    assert_eq!(report["csm_complement"], serde_json::json!(["1", "0", "1"]));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn analyze_json_runs_are_byte_identical() {
    let args = ["analyze", "--poly", "x*y*z", "--json", "--seed", "11"];
    let first = logchern(&args);
    let second = logchern(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn codim_exit_code_contract() {
    let ok = logchern(&["codim", "-n", "2", "-d", "2,3"]);
    assert_eq!(ok.status.code(), Some(0));

    let fail = logchern(&["codim", "-n", "3", "-d", "1,1,1"]);
    assert_eq!(fail.status.code(), Some(1));
    let stdout = String::from_utf8(fail.stdout).unwrap();
    assert!(stdout.contains("mismatch       = H^3"));

    let err = logchern(&["codim", "-n", "3", "-d", "1,1,1,1"]);
    assert_eq!(err.status.code(), Some(2));
}

#[test]
fn jet_cap_and_retry_flags_are_honored() {
    // A cap far below the stabilization order is a validation error.
    let err = logchern(&[
        "analyze",
        "--poly",
        "x^5 + x^2*y^2*z + y^5",
        "--max-jet-order",
        "3",
    ]);
    assert_eq!(err.status.code(), Some(2));
    let stderr = String::from_utf8(err.stderr).unwrap();
    assert!(stderr.contains("stabilize"));

    // The three-line arrangement needs a coordinate change, so a budget of
    // one (the identity attempt) is exhausted.
    let err = logchern(&["analyze", "--poly", "x*y*z", "--retries", "1"]);
    assert_eq!(err.status.code(), Some(2));
    let stderr = String::from_utf8(err.stderr).unwrap();
    assert!(stderr.contains("no chart found"));

    // A bigger budget succeeds with the same seed.
    let ok = logchern(&["analyze", "--poly", "x*y*z", "--retries", "32"]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn version_flag_reports_the_crate_version() {
    let out = logchern(&["--version"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains(env!("CARGO_PKG_VERSION")));
}
