//! Black-box tests of the `polyherm` binary: every check here drives the
//! compiled executable through its public interface only — argument vectors
//! in, exit codes and byte streams out.

use std::process::{Command, Output};
use std::time::Instant;

use num_complex::Complex64;
use polyherm::{build_operational, ParamSet, TriPoly};
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_polyherm"));
    // isolate from whatever the invoking shell exports; the override test
    // sets the variable explicitly
    c.env_remove("POLYHERM_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is a JSON error body")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn construct_round_trips_through_serialization_bit_exactly() {
    let out = run(&[
        "construct",
        "--nu",
        "1.7",
        "--alpha",
        "-0.6",
        "--xi-re",
        "0.25",
        "--xi-im",
        "-0.35",
        "--n",
        "7",
        "--method",
        "operational",
    ]);
    assert!(out.status.success(), "construct failed: {out:?}");
    let body = stdout_json(&out);
    let reparsed: TriPoly =
        serde_json::from_value(body["terms"].clone()).expect("terms parse as a polynomial");
    let p = ParamSet::new(1.7, -0.6, Complex64::new(0.25, -0.35));
    let expected = build_operational(&p, 7).substitute_xi(p.xi);
    assert_eq!(
        reparsed, expected,
        "re-parsed terms differ from in-memory build"
    );
}

#[test]
fn construct_degree_three_flat_case_is_zb_cubed() {
    let out = run(&[
        "construct",
        "--nu",
        "1",
        "--alpha",
        "0",
        "--n",
        "3",
        "--method",
        "recurrence",
    ]);
    assert!(out.status.success());
    let body = stdout_json(&out);
    assert_eq!(
        body["terms"],
        serde_json::json!([{"i": 0, "j": 3, "k": 0, "re": 1.0, "im": 0.0}])
    );
    assert_eq!(body["n"], 3);
    assert_eq!(body["method"], "recurrence");
}

#[test]
fn construct_degree_zero_is_the_constant_one() {
    let out = run(&["construct", "--n", "0"]);
    assert!(out.status.success());
    let body = stdout_json(&out);
    assert_eq!(
        body["terms"],
        serde_json::json!([{"i": 0, "j": 0, "k": 0, "re": 1.0, "im": 0.0}])
    );
}

#[test]
fn csv_is_reserved_for_grid_output() {
    // reports are JSON-only by design; construct has no --format flag at all
    let out = run(&[
        "construct",
        "--nu",
        "1",
        "--alpha",
        "0.3",
        "--n",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "Usage");

    let out = run(&[
        "grid", "--n", "1", "--nx", "2", "--ny", "2", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = stdout_json(&out);
    assert_eq!(rows.as_array().map(|a| a.len()), Some(4));
}

#[test]
fn hermite_route_rejects_zero_alpha_with_exit_two() {
    let out = run(&["construct", "--method", "hermite", "--alpha", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "AlphaZero");
}

#[test]
fn wigner_transform_rejects_out_of_regime_parameters() {
    let out = run(&[
        "transform",
        "--kind",
        "wigner",
        "--alpha",
        "0.6",
        "--nu",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "RegimeViolation");
}

#[test]
fn unknown_flag_is_a_usage_error_with_json_stderr() {
    let out = run(&["construct", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "Usage");
}

#[test]
fn degree_cap_is_enforced() {
    let out = run(&["construct", "--n", "61"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "NTooLarge");
}

#[test]
fn verify_nielsen_convolution_passes() {
    let out = run(&[
        "verify", "--id", "nielsen", "--nu", "1", "--alpha", "0.3", "--n-max", "10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let reports = stdout_json(&out);
    let arr = reports.as_array().expect("array of reports");
    assert!(!arr.is_empty());
    assert!(arr.iter().all(|r| r["pass"] == true));
}

#[test]
fn verify_pde_with_zero_degree_passes_trivially() {
    let out = run(&[
        "verify", "--id", "pde", "--n-max", "0", "--nu", "1", "--alpha", "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_exit_code_one_when_rejudged_tolerance_fails() {
    // an impossible tolerance flips the pass flags without touching the math
    let out = run(&[
        "verify", "--id", "nielsen", "--nu", "1", "--alpha", "0.3", "--tol", "1e-30",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_unknown_selector_is_usage() {
    let out = run(&["verify", "--id", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "Usage");
}

#[test]
fn gram_basic_prints_a_passing_report() {
    let out = run(&[
        "gram", "--kind", "basic", "--nu", "1", "--alpha", "0.2", "--N", "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let body = stdout_json(&out);
    assert_eq!(body["pass"], true);
    assert_eq!(body["N"], 4);
    assert!(body["max_offdiag"].as_f64().unwrap() < 1e-9);
}

#[test]
fn gram_rejects_basis_beyond_supported_size() {
    let out = run(&[
        "gram", "--kind", "basic", "--nu", "1", "--alpha", "0.2", "--N", "13",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "RegimeViolation");
}

#[test]
fn grid_emits_exactly_the_lattice_and_values_are_the_conjugate() {
    // I_1 at nu = 1, alpha = 0, xi = 0 is zb, so every row must satisfy
    // (re, im) = (x, -y)
    let out = run(&[
        "grid", "--n", "1", "--nu", "1", "--alpha", "0", "--nx", "2", "--ny", "2", "--xmin", "0",
        "--xmax", "1", "--ymin", "0", "--ymax", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    let rows: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(rows.len(), 4, "expected one row per lattice point");
    for row in rows {
        let vals: Vec<f64> = row.split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(vals.len(), 4);
        let (x, y, re, im) = (vals[0], vals[1], vals[2], vals[3]);
        assert_eq!(re, x, "row {row}");
        assert_eq!(im, -y, "row {row}");
    }
}

#[test]
fn identical_seeded_invocations_are_byte_identical() {
    let args = ["verify", "--id", "derivative", "--seed", "12345"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), second.status.code());
    assert_eq!(first.stdout, second.stdout, "seeded outputs must not drift");

    let args = ["construct", "--nu", "1.3", "--alpha", "-0.4", "--n", "9"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn seed_env_variable_overrides_the_flag() {
    let with_env = bin()
        .args(["verify", "--id", "derivative", "--seed", "7"])
        .env("POLYHERM_SEED", "99")
        .output()
        .expect("binary runs");
    let with_flag = run(&["verify", "--id", "derivative", "--seed", "99"]);
    assert_eq!(with_env.stdout, with_flag.stdout);

    let plain = run(&["verify", "--id", "derivative", "--seed", "7"]);
    assert_ne!(
        plain.stdout, with_flag.stdout,
        "different seeds must differ"
    );
}

#[test]
fn suite_passes_all_six_criteria_within_the_time_budget() {
    let start = Instant::now();
    let out = run(&["suite"]);
    let elapsed = start.elapsed().as_secs_f64();
    let text = stdout_str(&out);
    assert_eq!(out.status.code(), Some(0), "suite failed:\n{text}");
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines.len(), 6, "one line per criterion:\n{text}");
    for (idx, line) in lines.iter().enumerate() {
        assert!(
            line.starts_with(&format!("criterion {}", idx + 1)),
            "unexpected line order: {line}"
        );
        assert!(line.contains(": PASS"), "criterion did not pass: {line}");
    }
    assert!(
        elapsed < 300.0,
        "suite took {elapsed:.0}s, budget is five minutes"
    );
}
