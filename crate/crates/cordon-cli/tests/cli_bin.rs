//! End-to-end checks of the `cordon` binary: command surface, file outputs,
//! and exit codes (0 success, 1 parse/validation, 2 runtime).

use std::path::Path;
use std::process::{Command, Output};

fn cordon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cordon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).to_string()
}

#[test]
fn run_prints_the_outcome_table() {
    let out = cordon(&["run", "--scenario", "case1", "--seed", "1", "--ticks", "5"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("Achieved the goal?"));
    assert!(text.contains("Wounded protesters"));
    assert!(text.contains("0/81"));
}

#[test]
fn run_writes_report_and_trace_files() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.txt");
    let trace = dir.path().join("run.trace");
    let out = cordon(&[
        "run", "--scenario", "case2", "--seed", "3", "--ticks", "4",
        "--report", report.to_str().unwrap(),
        "--trace", trace.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));

    let record = std::fs::read_to_string(&report).unwrap();
    let parsed = cordon_cli::report::parse_record(&record).unwrap();
    assert_eq!(parsed.seed, 3);
    assert_eq!(parsed.ticks_elapsed, 4);

    let trace_text = std::fs::read_to_string(&trace).unwrap();
    let data = cordon_cli::trace::parse_trace(&trace_text).unwrap();
    assert_eq!(data.records.len(), 4);
    assert_eq!(data.seed, 3);
}

#[test]
fn snapshot_renders_from_a_trace_file() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("run.trace");
    let svg = dir.path().join("tick0.svg");
    let out = cordon(&[
        "run", "--scenario", "case1", "--seed", "7", "--ticks", "3",
        "--trace", trace.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let out = cordon(&[
        "snapshot", "--trace", trace.to_str().unwrap(), "--tick", "0",
        "--out", svg.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let body = std::fs::read_to_string(&svg).unwrap();
    assert!(body.starts_with("<svg"));
    assert!(body.contains("</svg>"));

    // Out-of-range tick is a runtime error (exit 2).
    let out = cordon(&[
        "snapshot", "--trace", trace.to_str().unwrap(), "--tick", "50",
        "--out", svg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn batch_aggregates_and_writes_records() {
    let dir = tempfile::tempdir().unwrap();
    let outfile = dir.path().join("batch.txt");
    let out = cordon(&[
        "batch", "--scenario", "case1", "--seeds", "1..3", "--ticks", "4",
        "--out", outfile.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("median"));
    let records = std::fs::read_to_string(&outfile).unwrap();
    assert_eq!(records.matches("seed=").count(), 3);
}

#[test]
fn compare_prints_paired_rows_and_rates() {
    let out = cordon(&["compare", "--a", "case1", "--b", "case2", "--seeds", "1..2", "--ticks", "4"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("pairs: 2"));
    assert!(text.contains("goal achieved rate"));
}

#[test]
fn run_without_seed_uses_the_scenario_default() {
    let out = cordon(&["run", "--scenario", "case1", "--ticks", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("Seed"));
    assert!(stdout(&out).contains("42"));

    // A scenario without run.default_seed requires --seed.
    let dir = tempfile::tempdir().unwrap();
    let stripped = dir.path().join("no_seed.toml");
    let source = cordon_cli::scenarios::CASE1.replace("default_seed = 42\n", "");
    std::fs::write(&stripped, source).unwrap();
    let out = cordon(&["run", "--scenario", stripped.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("default_seed"));
}

#[test]
fn invalid_scenario_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    let source = cordon_cli::scenarios::CASE1
        .replace("weights = { opponent = 0.05,", "weights = { opponent = 7.0,");
    std::fs::write(&bad, source).unwrap();
    let out = cordon(&["run", "--scenario", bad.to_str().unwrap(), "--seed", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("validation error"));
    assert!(stderr(&out).contains("line"));
}

#[test]
fn unreadable_scenario_exits_two() {
    let missing = Path::new("/nonexistent/scenario.toml");
    let out = cordon(&["run", "--scenario", missing.to_str().unwrap(), "--seed", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("io error"));
}

#[test]
fn identical_runs_produce_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let t1 = dir.path().join("a.trace");
    let t2 = dir.path().join("b.trace");
    for t in [&t1, &t2] {
        let out = cordon(&[
            "run", "--scenario", "case2", "--seed", "5", "--ticks", "6",
            "--trace", t.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&t1).unwrap(), std::fs::read(&t2).unwrap());
}
