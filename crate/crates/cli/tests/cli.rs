//! Black-box tests of the `fzgraph` binary: output schema, exit codes,
//! stdin handling, determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use num_bigint::BigInt;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fzgraph"))
}

fn write_edges(content: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().expect("temp file");
    file.write_all(content.as_bytes()).expect("write edges");
    file
}

fn k4_edges() -> &'static str {
    "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"
}

fn petersen_edges() -> String {
    fzgraph_core::graph::Graph::petersen().to_edge_list()
}

fn cycle_edges(n: usize) -> String {
    let mut out = String::new();
    for i in 0..n {
        out.push_str(&format!("{} {}\n", i, (i + 1) % n));
    }
    out
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    serde_json::from_slice(&output.stdout).expect("valid json")
}

#[test]
fn count_hamiltonian_fz_trace_on_k4() {
    let file = write_edges(k4_edges());
    let out = run(&["count", "hamiltonian", "--method", "fz-trace", "--input", file.path().to_str().unwrap()]);
    let json = stdout_json(&out);
    assert_eq!(json["quantity"], "hamiltonian");
    assert_eq!(json["method"], "fz-trace");
    assert_eq!(json["value"], "3");
    assert_eq!(json["graph"]["n"], 4);
    assert_eq!(json["graph"]["m"], 6);
    assert!(json["elapsed_ms"].is_number());
}

#[test]
fn count_spanning_trees_on_petersen() {
    let file = write_edges(&petersen_edges());
    let out = run(&[
        "count",
        "spanning-trees",
        "--method",
        "fermion-trace",
        "--input",
        file.path().to_str().unwrap(),
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["value"], "2000");

    // the reported value round-trips into the exact integer count
    let parsed: BigInt = json["value"].as_str().unwrap().parse().unwrap();
    let expected = fzgraph_core::operators::spanning_tree_count(&fzgraph_core::graph::Graph::petersen()).unwrap();
    assert_eq!(parsed, expected);
}

#[test]
fn count_cycle_matching_at_level() {
    let file = write_edges("0 1\n1 2\n0 2\n");
    let out = run(&[
        "count",
        "cycle-matching",
        "--level",
        "3",
        "--method",
        "zeon-trace",
        "--input",
        file.path().to_str().unwrap(),
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["value"], "2");
}

#[test]
fn goulden_jackson_is_anchor_independent_and_halved() {
    let file = write_edges(k4_edges());
    for anchor in ["0", "1", "2", "3"] {
        let out = run(&[
            "count",
            "hamiltonian",
            "--method",
            "goulden-jackson",
            "--anchor",
            anchor,
            "--input",
            file.path().to_str().unwrap(),
        ]);
        let json = stdout_json(&out);
        assert_eq!(json["value"], "3", "anchor {anchor}");
    }
}

#[test]
fn reads_graph_from_stdin() {
    let mut child = bin()
        .args(["count", "hamiltonian", "--method", "oracle", "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child.stdin.as_mut().unwrap().write_all(b"0 1\n1 2\n0 2\n").unwrap();
    let out = child.wait_with_output().unwrap();
    let json = stdout_json(&out);
    assert_eq!(json["value"], "1");
}

#[test]
fn malformed_input_exits_2() {
    let file = write_edges("0 1\nnot numbers\n");
    let out = run(&["count", "hamiltonian", "--method", "liu", "--input", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn loops_duplicates_and_range_errors_exit_2() {
    let loops = write_edges("2 2\n");
    let out = run(&["count", "spanning-trees", "--method", "oracle", "--input", loops.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let dup = write_edges("0 1\n1 0\n");
    let out = run(&["count", "spanning-trees", "--method", "oracle", "--input", dup.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let range = write_edges("0 9\n");
    let out = run(&[
        "count",
        "spanning-trees",
        "--method",
        "oracle",
        "--input",
        range.path().to_str().unwrap(),
        "--vertices",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_method_exits_2() {
    let file = write_edges(k4_edges());
    let out = run(&["count", "hamiltonian", "--method", "magic", "--input", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("fz-trace"));
}

#[test]
fn missing_file_exits_2() {
    let out = run(&["count", "hamiltonian", "--method", "liu", "--input", "/nonexistent/graph.edges"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn subset_guard_refusal_exits_3() {
    let file = write_edges(&cycle_edges(25));
    let out = run(&["count", "hamiltonian", "--method", "fz-trace", "--input", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let lifted = run(&[
        "count",
        "cycle-matching",
        "--level",
        "1",
        "--method",
        "zeon-trace",
        "--allow-large",
        "--input",
        file.path().to_str().unwrap(),
    ]);
    assert_eq!(lifted.status.code(), Some(0));
}

#[test]
fn verify_oracle_cap_exits_3() {
    let file = write_edges(&cycle_edges(12)); // n=12 exceeds the cover-oracle cap
    let out = run(&["verify", "--input", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_passes_on_k4_and_petersen() {
    for edges in [k4_edges().to_string(), petersen_edges()] {
        let file = write_edges(&edges);
        let out = run(&["verify", "--input", file.path().to_str().unwrap(), "--format", "json"]);
        let json = stdout_json(&out);
        assert_eq!(json["pass"], true);
    }
}

#[test]
fn json_reports_are_deterministic_apart_from_timing() {
    let file = write_edges(k4_edges());
    let args = ["count", "hamiltonian", "--method", "liu", "--input", file.path().to_str().unwrap()];
    let mut normalized = Vec::new();
    for _ in 0..2 {
        let out = run(&args);
        let mut json = stdout_json(&out);
        json.as_object_mut().unwrap().remove("elapsed_ms");
        normalized.push(serde_json::to_string(&json).unwrap());
    }
    assert_eq!(normalized[0], normalized[1]);
}
