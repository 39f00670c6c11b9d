use std::io::Write;
use std::process::{Command, Output, Stdio};

use enlarge::cli::Report;
use serde_json::{json, Value};

fn run(jobs: &Value, extra: &[&str]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_enlarge"))
        .args(extra)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(jobs.to_string().as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn reports(out: &Output) -> Vec<Report> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn exit_codes_follow_the_contract() {
    let ok = json!([{"graph": "ladder", "command": "classify", "x": "const lad:5", "y": "affine lad:n"}]);
    assert_eq!(run(&ok, &["--json"]).status.code(), Some(0));
    let split = json!([{"graph": "one_ended_path", "command": "classify", "x": "parity(p:n, p:0)", "y": "const p:0"}]);
    assert_eq!(run(&split, &["--json"]).status.code(), Some(2));
    let bad = json!([{"graph": "ladder", "command": "check", "suite": "nonsense"}]);
    assert_eq!(run(&bad, &["--json"]).status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_enlarge")).args(["--job", "/nonexistent/jobs.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn json_lines_keep_input_order_and_round_trip() {
    let jobs = json!([
        {"graph": "one_ended_path", "command": "chain", "seed": "affine p:n", "m": 3},
        {"graph": "grid2d", "command": "check", "suite": "galaxy-partition"},
        {"graph": "diamond_chain", "command": "wdistance", "x": "x1:0", "y": "x1:2"},
        {"graph": "ladder", "command": "describe"},
    ]);
    let out = run(&jobs, &["--json", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let rs = reports(&out);
    assert_eq!(rs.iter().map(|r| r.command.as_str()).collect::<Vec<_>>(), ["chain", "check", "wdistance", "describe"]);
    assert_eq!(rs[0].result["entries"].as_array().unwrap().len(), 7);
    assert_eq!(rs[2].result["distance"], "w*4");
    for (r, j) in rs.iter().zip(jobs.as_array().unwrap()) {
        assert_eq!(&r.job, j);
        let again: Report = serde_json::from_str(&serde_json::to_string(r).unwrap()).unwrap();
        assert_eq!(&again, r);
    }
    let twice = reports(&run(&jobs, &["--json", "--seed", "3"]));
    let strip = |r: &Report| Report { elapsed_ms: 0, ..r.clone() };
    assert_eq!(rs.iter().map(strip).collect::<Vec<_>>(), twice.iter().map(strip).collect::<Vec<_>>());
}

#[test]
fn table_output_by_default() {
    let jobs = json!([{"graph": "endless_path", "command": "distance", "x": "p:-4", "y": "p:9"}]);
    let out = run(&jobs, &[]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("#"), "{text}");
    assert!(text.contains("d = 13"), "{text}");
}

#[test]
fn budget_flag_limits_search() {
    let jobs = json!([{"graph": {"family": "perturbed_grid", "edits": [{"op": "remove", "a": [0, 0], "b": [0, 1]}]},
                       "command": "distance", "x": "grid:0,0", "y": "grid:30,30"}]);
    let out = run(&jobs, &["--json", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(reports(&out)[0].result["exhausted"], true);
    assert_eq!(run(&jobs, &["--json"]).status.code(), Some(0));
}
