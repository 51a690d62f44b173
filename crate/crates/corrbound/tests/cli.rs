//! End-to-end tests of the `corrbound` binary: exit codes, output formats,
//! and file round-trips.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corrbound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn write_fixture_1(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("fixture1.csv");
    fs::write(&path, "1, 0, -0.5\n0, 1, 0.5\n-0.5, 0.5, 1\n").unwrap();
    path
}

#[test]
fn analyze_reports_fixture_values_in_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture_1(dir.path());
    let out = run(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 3);
    assert!((v["det_R"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert!((v["det_Rhat"].as_f64().unwrap() - 0.6361).abs() < 1e-3);
    assert_eq!(v["improves_olkin"], true);
    assert_eq!(v["theorem1"]["left_holds"], true);
    assert_eq!(v["spectra"]["R"].as_array().unwrap().len(), 3);
}

#[test]
fn analyze_json_output_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture_1(dir.path());
    let a = run(&["analyze", path.to_str().unwrap(), "--json"]);
    let b = run(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn analyze_table_lists_the_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture_1(dir.path());
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("det Rtilde"));
    assert!(text.contains("holds"));
}

#[test]
fn analyze_second_fixture_does_not_improve() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fixture2.csv");
    fs::write(&path, "1, -0.3, -0.3\n-0.3, 1, -0.5\n-0.3, -0.5, 1\n").unwrap();
    let out = run(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["improves_olkin"], false);
}

#[test]
fn analyze_exit_codes_for_bad_input() {
    let dir = tempfile::tempdir().unwrap();

    let invalid = dir.path().join("diag.csv");
    fs::write(&invalid, "1, 0.9\n0.9, 2\n").unwrap();
    assert_eq!(exit_code(&run(&["analyze", invalid.to_str().unwrap()])), 3);

    let ragged = dir.path().join("ragged.csv");
    fs::write(&ragged, "1, 0\n0\n").unwrap();
    assert_eq!(exit_code(&run(&["analyze", ragged.to_str().unwrap()])), 2);

    let asym = dir.path().join("asym.csv");
    fs::write(&asym, "1, 0.5\n0.3, 1\n").unwrap();
    assert_eq!(exit_code(&run(&["analyze", asym.to_str().unwrap()])), 2);

    let missing = dir.path().join("nope.csv");
    assert_eq!(exit_code(&run(&["analyze", missing.to_str().unwrap()])), 5);

    let indefinite = dir.path().join("indef.csv");
    fs::write(&indefinite, "1, -0.9, -0.9\n-0.9, 1, -0.9\n-0.9, -0.9, 1\n").unwrap();
    assert_eq!(
        exit_code(&run(&["analyze", indefinite.to_str().unwrap()])),
        3
    );
}

#[test]
fn paper_examples_all_pass() {
    let out = run(&["paper-examples"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.matches("example-").count(), 3);
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn paper_examples_json_form() {
    let out = run(&["paper-examples", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 3);
    assert!(arr.iter().all(|f| f["pass"] == true));
}

#[test]
fn sweep_small_sample_is_clean() {
    let out = run(&[
        "sweep", "--n-min", "2", "--n-max", "3", "--count", "25", "--json", "--seed", "5",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["matrices"], 50);
    assert_eq!(v["failures"], 0);
}

#[test]
fn sweep_handles_the_two_by_two_edge() {
    let out = run(&["sweep", "--n-min", "2", "--n-max", "2", "--count", "10"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("failures                0"));
}

#[test]
fn sweep_rejects_bad_ranges() {
    assert_eq!(exit_code(&run(&["sweep", "--n-min", "1"])), 2);
    assert_eq!(
        exit_code(&run(&["sweep", "--n-min", "5", "--n-max", "3"])),
        2
    );
}

#[test]
fn search_guaranteed_regime_finds_nothing() {
    let out = run(&[
        "search",
        "p-counterexample",
        "--p",
        "2",
        "--n",
        "3",
        "--budget",
        "50",
        "--restarts",
        "2",
        "--seed",
        "3",
    ]);
    assert_eq!(exit_code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["found"], false);
}

#[test]
fn search_limit_bound_finds_and_roundtrips() {
    let dir = tempfile::tempdir().unwrap();
    let best = dir.path().join("best.csv");
    let out = run(&[
        "search",
        "p-counterexample",
        "--p",
        "inf",
        "--n",
        "3",
        "--budget",
        "400",
        "--restarts",
        "3",
        "--seed",
        "7",
        "--out",
        best.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["found"], true);
    assert!(v["objective"].as_f64().unwrap() > 1e-9);
    assert_eq!(v["p"], "inf");

    // The saved matrix must be a valid correlation matrix...
    let analyzed = run(&["analyze", best.to_str().unwrap(), "--json"]);
    assert_eq!(exit_code(&analyzed), 0);
    // ...that genuinely violates the limit bound.
    let rep: serde_json::Value = serde_json::from_str(&stdout(&analyzed)).unwrap();
    let r_inf = rep["r_inf"].as_f64().unwrap();
    let det_r = rep["det_R"].as_f64().unwrap();
    let n = 3.0;
    let bound = (1.0 - r_inf).powi(2) * (1.0 + (n - 1.0) * r_inf);
    assert!(det_r > bound + 1e-9);
}

#[test]
fn search_seeded_near_the_violating_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let start = dir.path().join("start.csv");
    fs::write(&start, "1, 0, 0.8\n0, 1, -0.5\n0.8, -0.5, 1\n").unwrap();
    let out = run(&[
        "search",
        "p-counterexample",
        "--p",
        "inf",
        "--n",
        "3",
        "--budget",
        "1",
        "--restarts",
        "1",
        "--start",
        start.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["objective"].as_f64().unwrap() >= 0.006 - 1e-6);
}

#[test]
fn search_negative_r1_finds() {
    let out = run(&[
        "search",
        "negative-r1",
        "--n",
        "3",
        "--budget",
        "500",
        "--seed",
        "1",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["found"], true);
}

#[test]
fn search_flag_validation() {
    // Missing --p for the exponent task.
    let out = run(&["search", "p-counterexample", "--n", "3"]);
    assert_eq!(exit_code(&out), 2);
    // Invalid exponent.
    let out = run(&["search", "p-counterexample", "--p", "0.5", "--n", "3"]);
    assert_eq!(exit_code(&out), 2);
    // Unknown task name is a clap usage error.
    let out = run(&["search", "zigzag"]);
    assert_eq!(exit_code(&out), 2);
    // Bad perturb scale.
    let out = run(&[
        "search",
        "negative-r1",
        "--n",
        "3",
        "--perturb-scale",
        "1.5",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    assert_eq!(
        exit_code(&run(&[
            "gen",
            "--n",
            "3",
            "--seed",
            "42",
            "--out",
            a.to_str().unwrap()
        ])),
        0
    );
    assert_eq!(
        exit_code(&run(&[
            "gen",
            "--n",
            "3",
            "--seed",
            "42",
            "--out",
            b.to_str().unwrap()
        ])),
        0
    );
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let analyzed = run(&["analyze", a.to_str().unwrap()]);
    assert_eq!(exit_code(&analyzed), 0);
}

#[test]
fn gen_writes_to_stdout_without_out() {
    let out = run(&["gen", "--n", "2", "--seed", "9"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2);
    assert!(text.starts_with("1.0000000000000000e0,"));
}

#[test]
fn gen_exit_codes() {
    assert_eq!(exit_code(&run(&["gen", "--n", "1"])), 2);
    let out = run(&["gen", "--n", "3", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(exit_code(&out), 5);
}
