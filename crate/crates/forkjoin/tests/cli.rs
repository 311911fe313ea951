//! End-to-end checks of the `forkjoin` binary: exit codes, diagnostics and
//! output formats.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_forkjoin"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    let mut cmd = bin();
    for a in args {
        cmd.arg(a);
    }
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("forkjoin-cli-{}-{name}", std::process::id()))
}

#[test]
fn bounds_prints_the_analytic_pair() {
    let topo = data("fork_join_5.topo");
    let out = run(&[
        "bounds",
        topo.to_str().unwrap(),
        "model",
        "exponential",
        "1",
        "1",
        "1",
        "1",
        "1",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("lower bound (max mean service time): 1.000000"), "{text}");
    assert!(text.contains("2.283333"), "{text}");
    assert!(text.contains("closed-form"), "{text}");
}

#[test]
fn bounds_supports_explicit_methods() {
    let topo = data("fork_join_5.topo");
    let topo = topo.to_str().unwrap();
    let out = run(&["bounds", topo, "--method", "quadrature", "exponential", "1", "1", "1", "5", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("5.465368"), "{}", stdout(&out));

    let out = run(&[
        "bounds", topo, "--method", "monte-carlo", "--mc-draws", "2000000", "--seed", "7",
        "mixture", "0.5",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("1.48"), "{}", stdout(&out));
}

#[test]
fn simulate_single_cycle_reports_the_first_completion() {
    // unit services on the 5-node fork-join network: the first cycle ends
    // after the three services of the longest chain
    let topo = data("fork_join_5.topo");
    let csv = temp_path("single.csv");
    let out = run(&[
        "simulate",
        topo.to_str().unwrap(),
        "model",
        "deterministic",
        "1",
        "1",
        "1",
        "1",
        "1",
        "--cycles",
        "1",
        "--seed",
        "9",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("mean cycle time estimate:            3.000000"), "{}", stdout(&out));
    let written = std::fs::read_to_string(&csv).unwrap();
    assert!(written.contains("deterministic,1.000000,3.000000,,1.000000"), "{written}");
    std::fs::remove_file(&csv).ok();
}

#[test]
fn table_rejects_unknown_presets_as_usage_errors() {
    let out = run(&["table", "table9", "--out", "/dev/null"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown table preset"), "{}", stderr(&out));
}

#[test]
fn table_writes_the_csv_schema() {
    let csv = temp_path("t1.csv");
    let out = run(&[
        "table", "table1", "--cycles", "200", "--seed", "5", "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let written = std::fs::read_to_string(&csv).unwrap();
    assert!(written.starts_with("# forkjoin-table-csv-v1\n"), "{written}");
    assert!(written.contains("param,lower,gamma_hat,"), "{written}");
    assert_eq!(written.lines().count(), 11, "{written}");
    std::fs::remove_file(&csv).ok();
}

#[test]
fn missing_and_malformed_inputs_exit_with_parse_code() {
    let out = run(&["bounds", "/nonexistent/net.topo", "erlang", "2"]);
    assert_eq!(out.status.code(), Some(2));

    let bad = temp_path("bad.topo");
    std::fs::write(&bad, "nodes 3\nedge 1 two\n").unwrap();
    let out = run(&["bounds", bad.to_str().unwrap(), "erlang", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
    std::fs::remove_file(&bad).ok();

    let topo = data("fork_join_5.topo");
    let out = run(&["bounds", topo.to_str().unwrap(), "model", "gamma", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown model family"), "{}", stderr(&out));
}

#[test]
fn numeric_failures_exit_with_code_three() {
    // no closed form exists for a shape-2 Erlang maximum
    let topo = data("tandem_10.topo");
    let out = run(&[
        "bounds",
        topo.to_str().unwrap(),
        "--method",
        "closed-form",
        "erlang",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("no closed form"), "{}", stderr(&out));
}

#[test]
fn usage_errors_exit_with_code_one() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&[]);
    assert_eq!(out.status.code(), Some(1));

    let topo = data("fork_join_5.topo");
    let out = run(&["bounds", topo.to_str().unwrap(), "--method", "psychic", "erlang", "1"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["simulate", topo.to_str().unwrap(), "erlang", "1", "--cycles", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_cleanly() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("bounds"));
    assert!(stdout(&out).contains("Exit codes"));
}
