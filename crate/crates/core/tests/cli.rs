use std::path::PathBuf;

use clap::Parser;
use extremal_sets::cli::{run, Cli, EXIT_CLAIM_FAILED, EXIT_INPUT_ERROR, EXIT_OK};

fn temp_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("extremal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn call(args: &[&str]) -> extremal_sets::cli::Outcome {
    let cli = Cli::try_parse_from(std::iter::once("extremal").chain(args.iter().copied())).unwrap();
    run(&cli)
}

const FIGURE: &str = "n=3\n-\n1\n2\n3\n2 3\n";

#[test]
fn analyze_exit_codes() {
    let good = temp_file("good.txt", FIGURE);
    let out = call(&["analyze", good.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("extremal     yes"));

    let bad = temp_file("diag.txt", "n=2\n-\n1 2\n");
    assert_eq!(call(&["analyze", bad.to_str().unwrap()]).code, EXIT_CLAIM_FAILED);

    let empty = temp_file("empty.txt", "");
    let out = call(&["analyze", empty.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INPUT_ERROR);
    assert!(out.stderr.starts_with("error:"));

    let garbage = temp_file("garbage.txt", "n=3\n1 x\n");
    assert_eq!(call(&["analyze", garbage.to_str().unwrap()]).code, EXIT_INPUT_ERROR);
}

#[test]
fn analyze_json_output() {
    let good = temp_file("good-json.txt", FIGURE);
    let out = call(&["--json", "analyze", good.to_str().unwrap()]);
    let value: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(value["size"], 5);
    assert_eq!(value["extremal"], true);
}

#[test]
fn reconstruct_flips_when_empty_set_is_missing() {
    let input = temp_file("noempty.txt", "n=2\n1\n1 2\n");
    let out = call(&["--json", "reconstruct", input.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let value: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(value["flip"], serde_json::json!([1]));
    assert_eq!(value["steps"].as_array().unwrap().len(), 1);
}

#[test]
fn reconstruct_then_replay() {
    let input = temp_file("fig-rec.txt", FIGURE);
    let script = call(&["reconstruct", input.to_str().unwrap()]);
    assert_eq!(script.code, EXIT_OK);
    let path = temp_file("fig.script", &script.stdout);
    let replayed = call(&["replay", path.to_str().unwrap()]);
    assert_eq!(replayed.code, EXIT_OK);
    assert_eq!(replayed.stdout, FIGURE);
}

#[test]
fn peel_prints_one_line_per_removal() {
    let input = temp_file("fig-peel.txt", FIGURE);
    let out = call(&["peel", input.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK);
    let lines: Vec<&str> = out.stdout.lines().filter(|l| l.starts_with("remove")).collect();
    assert_eq!(lines.len(), 4);
    assert!(lines.iter().all(|l| l.ends_with("still extremal: yes")));
}

#[test]
fn random_is_deterministic() {
    let a = call(&["random", "--n", "6", "--steps", "10", "--seed", "5"]);
    let b = call(&["random", "--n", "6", "--steps", "10", "--seed", "5"]);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn enumerate_and_verify() {
    let out = call(&["--json", "enumerate", "--n", "2", "--require-empty"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(serde_json::from_str::<serde_json::Value>(&out.stdout).is_ok());
    let out = call(&["verify", "--theorem", "1", "--n", "3"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.contains("pass"));
    assert_eq!(call(&["verify", "--theorem", "1", "--n", "9"]).code, EXIT_INPUT_ERROR);
}

#[test]
fn export_dot_and_out_file() {
    let input = temp_file("fig-dot.txt", FIGURE);
    let out = call(&["export-dot", input.to_str().unwrap()]);
    assert!(out.stdout.starts_with("digraph inclusion {"));
    assert!(out.stdout.contains("\"{2}\" -> \"{2,3}\" [label=\"3\"];"));
    let edges = extremal_sets::graph::parse_dot_edges(&out.stdout).unwrap();
    assert_eq!(edges.len(), 5);

    let target = std::env::temp_dir().join(format!("extremal-cli-{}", std::process::id())).join("out.dot");
    let quiet = call(&["--out", target.to_str().unwrap(), "export-dot", input.to_str().unwrap()]);
    assert!(quiet.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&target).unwrap(), out.stdout);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_extremal");
    let good = temp_file("bin-good.txt", FIGURE);
    let status = std::process::Command::new(bin).arg("analyze").arg(&good).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_OK));
    let missing = std::process::Command::new(bin).args(["analyze", "/nonexistent/file"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(EXIT_INPUT_ERROR));
    let usage = std::process::Command::new(bin).arg("bogus").output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_INPUT_ERROR));
}
