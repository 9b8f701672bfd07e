//! End-to-end tests of the command-line surface, run in-process.

use std::io::Cursor;

use nimshape::cli::{run_from, EXIT_BUDGET, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn nimshape(args: &[&str]) -> Run {
    nimshape_with_stdin(args, "")
}

fn nimshape_with_stdin(args: &[&str], stdin: &str) -> Run {
    let mut full = vec!["nimshape"];
    full.extend_from_slice(args);
    let mut input = Cursor::new(stdin.to_string());
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_from(full, &mut input, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn sg_values_in_all_formats() {
    let r = nimshape(&["sg", "[4,2,1]"]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(r.out, "6\n");

    let r = nimshape(&["sg", "[4,2,1]+[3,3]"]);
    assert_eq!(r.out, "2\n"); // 6 xor 4

    let r = nimshape(&["sg", "[2,2]", "--misere"]);
    assert_eq!(r.out, "0\n");

    let r = nimshape(&["sg", "(1,2,3)+(2,2)", "--format", "json"]);
    assert_eq!(r.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(r.out.trim()).unwrap();
    assert_eq!(v["value"], 5);
    assert_eq!(v["convention"], "normal");

    let r = nimshape(&["sg", "[3,3,2,2,2]", "--format", "csv", "--exponent"]);
    assert!(r.out.contains("\"[3^2,2^3]\",normal,"));
}

#[test]
fn sg_ruleset_validation() {
    let r = nimshape(&["sg", "[2,1]", "--ruleset", "rnim"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains("pnim"));

    let r = nimshape(&["sg", "(2,2)", "--ruleset", "rnim"]);
    assert_eq!(r.code, EXIT_OK);
}

#[test]
fn bad_positions_are_usage_errors() {
    let r = nimshape(&["sg", "[2,3]"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains("weakly decreasing"));

    let r = nimshape(&["sg", "[2]+(2,2)"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains("mix"));

    let r = nimshape(&["best-move", "[]"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains("terminal"));
}

#[test]
fn best_move_reports_move_and_status() {
    let r = nimshape(&["best-move", "[3]+[2]"]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(
        r.out,
        "move: rm cols 3 of 1\nsuccessor: [2]+[2]\nstatus: winning\n"
    );

    let r = nimshape(&["best-move", "[1]", "--misere"]);
    assert!(r.out.contains("status: losing"));

    let r = nimshape(&["best-move", "[4,3]", "--misere", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(r.out.trim()).unwrap();
    assert_eq!(v["winning"], true);
    assert_eq!(v["successor"], "[1]");
}

#[test]
fn enumerate_csv_is_byte_stable() {
    let expected = "n,partition,g,longest_play\n\
                    1,\"[1]\",1,1\n\
                    2,\"[1,1]\",2,2\n\
                    3,\"[2,1]\",3,3\n\
                    3,\"[1,1,1]\",3,3\n";
    let a = nimshape(&[
        "enumerate",
        "--heavy",
        "--n",
        "3",
        "--up-to-conjugation",
        "--format",
        "csv",
    ]);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.out, expected);
    let b = nimshape(&[
        "enumerate",
        "--heavy",
        "--n",
        "3",
        "--up-to-conjugation",
        "--format",
        "csv",
    ]);
    assert_eq!(a.out, b.out);
}

#[test]
fn enumerate_grundy_filter_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sg2.csv");
    let r = nimshape(&[
        "enumerate",
        "--grundy",
        "2",
        "--n",
        "12",
        "--up-to-conjugation",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(r.code, EXIT_OK);
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        written,
        "n,partition,g,longest_play\n2,\"[1,1]\",2,2\n10,\"[3,3,3,1]\",2,6\n12,\"[3,3,3,3]\",2,6\n"
    );
}

#[test]
fn enumerate_requires_exactly_one_filter() {
    let r = nimshape(&["enumerate", "--n", "5"]);
    assert_eq!(r.code, EXIT_USAGE);
    let r = nimshape(&["enumerate", "--heavy", "--grundy", "2", "--n", "5"]);
    assert_eq!(r.code, EXIT_USAGE);
}

#[test]
fn conjecture_sweeps_report() {
    let r = nimshape(&["conjecture", "chopped-rect", "--a-max", "2", "--b-max", "1"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("chopped-rect"));
    assert!(r.out.contains("2 positions checked"));
    assert!(r.out.contains("0 counterexample"));

    let r = nimshape(&[
        "conjecture",
        "shallow-staircase",
        "--i-max",
        "2",
        "--s-max",
        "2",
        "--k-max",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(
        r.out,
        "conjecture,positions_checked,counterexamples\nshallow-staircase,8,0\n"
    );

    let r = nimshape(&["conjecture", "unknown-id"]);
    assert_eq!(r.code, EXIT_USAGE);
}

#[test]
fn verify_scopes_and_exit_codes() {
    let r = nimshape(&["verify", "--scope", "appendices"]);
    assert_eq!(r.code, EXIT_OK, "stderr: {}", r.err);
    assert!(r.out.contains("PASS appendix-grundy-two"));
    assert!(r.out.contains("PASS appendix-heavy-n8"));
    assert!(r.out.contains("0 failed, 0 skipped"));

    let r = nimshape(&["verify", "--scope", "nonsense"]);
    assert_eq!(r.code, EXIT_USAGE);

    // a starved budget must skip checks and exit with the budget code
    let r = nimshape(&["verify", "--scope", "formulas", "--budget", "5"]);
    assert_eq!(r.code, EXIT_BUDGET);
    assert!(r.out.contains("SKIP"));
}

#[test]
fn verify_json_is_machine_readable() {
    let r = nimshape(&["verify", "--scope", "cgh", "--format", "json"]);
    assert_eq!(r.code, EXIT_OK);
    for line in r.out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["status"], "Pass");
    }
}

#[test]
fn budget_exceeded_exit_code() {
    let r = nimshape(&["sg", "[6,5,4,3,2,1]", "--budget", "3"]);
    assert_eq!(r.code, EXIT_BUDGET);
    assert!(r.err.contains("budget"));
}

#[test]
fn cache_save_then_load() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pnim.cache");
    let r = nimshape(&[
        "cache",
        "save",
        path.to_str().unwrap(),
        "--ruleset",
        "pnim",
        "--n",
        "6",
    ]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.starts_with("saved "));

    let r = nimshape(&["cache", "load", path.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("(pnim)"));

    let r = nimshape(&["cache", "load", path.to_str().unwrap(), "--ruleset", "rnim"]);
    assert_eq!(r.code, EXIT_FAILURE);
    assert!(r.err.contains("tagged pnim"));

    let header = std::fs::read_to_string(&path).unwrap();
    assert!(header.starts_with("nimshape-cache v1 pnim\n"));
}

#[test]
fn play_session_over_stdin() {
    let r = nimshape_with_stdin(&["play", "[1]", "--misere"], "rm rows 1 of 1\n");
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("winner: engine"));

    // the engine opens when the human is second and wins normal [1]
    let r = nimshape_with_stdin(&["play", "[1]", "--second"], "");
    assert!(r.out.contains("engine: rm rows 1 of 1 -> []"));
    assert!(r.out.contains("winner: engine"));
}

#[test]
fn help_exits_zero() {
    let r = nimshape(&["--help"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("nimshape"));
    let r = nimshape(&["sg"]);
    assert_eq!(r.code, EXIT_USAGE);
}
