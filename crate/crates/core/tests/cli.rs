mod common;

use std::process::{Command, Output};

use common::*;
use lcp_subspace::cli::CodeFile;
use serde_json::Value;

fn lcpsub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcpsub")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fx(name: &str) -> String {
    fixture_path(name).to_string_lossy().into_owned()
}

fn structured(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--output", "structured"];
    full.extend_from_slice(args);
    let o = lcpsub(&full);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).unwrap())
}

#[test]
fn lcp_check_on_every_pair_fixture() {
    for name in ["example_6_1", "example_6_2", "s_lambda_q5_l2"] {
        let o = lcpsub(&["lcp-check", &fx(name)]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let text = stdout(&o);
        assert!(text.contains("criteria_agree: true"), "{name}: {text}");
        assert!(text.ends_with("verdict: true\n"));
    }
    let o = lcpsub(&["lcp-check", &fx("spread_f5_k3"), "--criterion", "pairwise"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn failed_check_reports_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.lcp");
    std::fs::write(
        &path,
        "field p=3 m=1\nambient n=3\nsubspace A: 100, 010\nsubspace B: 120\nfamily C: A\nfamily D: B\n",
    )
    .unwrap();
    let path = path.to_string_lossy().into_owned();
    let (code, doc) = structured(&["lcp-check", &path]);
    assert_eq!(code, 1);
    assert_eq!(doc["verdict"], false);
    assert_eq!(doc["report"]["violating_pair"], "(1, 1)");
    assert_eq!(doc["report"]["witness_basis"], "e1+2e2");
    assert_eq!(doc["report"]["verdict.stacked"], false);

    let lines = dir.path().join("lines.lcp");
    std::fs::write(&lines, "field p=3 m=1\nambient n=3\nsubspace A: 100\nsubspace B: 010\nfamily C: A\nfamily D: B\n")
        .unwrap();
    let lines = lines.to_string_lossy().into_owned();
    // Stacked is undefined for dims 1 + 1 < 3.
    let (code, doc) = structured(&["lcp-check", &lines]);
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["verdict.stacked"], "not applicable");
    let o = lcpsub(&["lcp-check", &lines, "--criterion", "stacked"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn distance_between_members() {
    let (code, doc) = structured(&["distance", &fx("example_6_1"), "U1", "U3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["distance"], 4);
    assert_eq!(doc["report"]["dim_intersection"], 0);
}

#[test]
fn constructions_from_cyclic_fixtures() {
    let (code, doc) =
        structured(&["construct", &fx("s_lambda_q5_l2"), "--method", "s-lambda", "--hook", "dual", "--lambda", "2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["memberwise"], true);
    assert_eq!(doc["report"]["lcp"], true);

    let (code, doc) =
        structured(&["construct", &fx("s_lambda_q5_l4"), "--method", "s-lambda", "--hook", "lcd", "--lambda", "4"]);
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["memberwise"], true);
    assert_eq!(doc["report"]["lcp"], false);

    let (code, _) = structured(&["construct", &fx("example_6_1"), "--method", "plotkin", "--c2", "C", "--d2", "D"]);
    assert_eq!(code, 0);
}

#[test]
fn spread_of_f5_6_from_the_command_line() {
    let o = lcpsub(&["spread", "--method", "field", "--q", "5", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("members: 126\n"), "{text}");
    assert!(text.contains("valid: true\n"));
}

#[test]
fn emitted_spread_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.lcp");
    let out_s = out.to_string_lossy().into_owned();
    let o = lcpsub(&["spread", "--method", "field", "--q", "3", "--k", "2", "--partition", "4", "--emit", &out_s]);
    assert_eq!(o.status.code(), Some(0));
    let file = CodeFile::load(&out).unwrap();
    assert_eq!(file.family("S").unwrap().len(), 10);
    assert_eq!(file.family("C").unwrap().len(), 4);
    assert_eq!(CodeFile::parse(&file.render()).unwrap(), file);
    let o = lcpsub(&["simulate", &out_s]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("recovery_rate: 1.0"));

    let o = lcpsub(&["spread", "--method", "matrix", "--file", &fx("spread_f2_k2_matrix"), "--partition", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("partition_lcp: true"));
}

#[test]
fn lift_preserves_the_verdict() {
    let (code, doc) = structured(&["lift", &fx("example_6_1"), "--m", "3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["lifted_n"], 12);
    assert_eq!(doc["report"]["transfer_agrees"], true);
}

#[test]
fn structured_simulation_is_byte_identical() {
    let f = fx("spread_f5_k3");
    let args = ["--output", "structured", "simulate", &f, "--mode", "random", "--trials", "300", "--seed", "11"];
    let a = lcpsub(&args);
    let b = lcpsub(&args);
    let mut par = args.to_vec();
    par.push("--parallel");
    let c = lcpsub(&par);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn malformed_files_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("short.lcp");
    std::fs::write(&path, "# header\nfield p=2 m=1\nambient n=4\nsubspace A: 1000, 010\n").unwrap();
    let o = lcpsub(&["lcp-check", &path.to_string_lossy(), "--c", "A", "--d", "A"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr).into_owned();
    assert!(err.contains("line 4"), "{err}");

    std::fs::write(&path, "field p=2 m=1\nambient n=2\nfamily C: X\n").unwrap();
    let o = lcpsub(&["lcp-check", &path.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains('X'));

    let o = lcpsub(&["lcp-check", "/nonexistent/file.lcp"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_subcommands_are_usage_errors() {
    assert_eq!(lcpsub(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lcpsub(&["spread", "--method", "field", "--q", "4", "--k", "0"]).status.code(), Some(2));
}
