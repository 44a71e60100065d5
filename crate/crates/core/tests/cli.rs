use std::path::Path;
use std::process::{Command, Output};

use nonlocal::boxfile::read_box;
use nonlocal::cli::{EXIT_CHECK_FAILED, EXIT_DOMAIN, EXIT_INPUT, EXIT_OK, EXIT_USAGE};
use nonlocal::experiments::bell_chsh_box;
use nonlocal::ProbabilityRule;

fn nonlocal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nonlocal")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    nonlocal(args).status.code().expect("exit code")
}

fn arg(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["check", "--box", "pr"]), EXIT_OK);
    assert_eq!(code(&["check", "--box", "mixed-order"]), EXIT_CHECK_FAILED);
    assert_eq!(code(&["sweep", "--steps", "1", "--out", "unused.csv"]), EXIT_USAGE);
    assert_eq!(code(&["frobnicate"]), EXIT_USAGE);
    assert_eq!(code(&["simulate", "--state", "0,0,0,0"]), EXIT_INPUT);
    assert_eq!(code(&["check", "--box", "/nonexistent/box.json"]), EXIT_INPUT);
    assert_eq!(code(&["simulate", "--rule", "power:m=-1"]), EXIT_USAGE);
    assert_eq!(code(&["search", "--state", "product", "--restarts", "1"]), EXIT_DOMAIN);
}

#[test]
fn malformed_box_file_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"provenance\": \"x\", \"alice_first\": {}}").unwrap();
    assert_eq!(code(&["check", "--box", arg(&path)]), EXIT_INPUT);
}

#[test]
fn simulate_then_check_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("step.json");
    assert_eq!(code(&["simulate", "--rule", "step", "--out", arg(&path)]), EXIT_OK);

    let loaded = read_box(&path).unwrap();
    let direct = bell_chsh_box(ProbabilityRule::Step);
    assert!(loaded.alice_first.max_abs_diff(&direct.alice_first) <= 1e-12);
    assert!(loaded.bob_first.max_abs_diff(&direct.bob_first) <= 1e-12);

    let out = nonlocal(&["check", "--box", arg(&path)]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["chsh"]["alice_first"].as_f64(), Some(4.0));
    assert_eq!(report["no_causal_order"]["pass"].as_bool(), Some(true));
    assert!(report["provenance"].as_str().unwrap().contains("rule=step"));
}

#[test]
fn simulate_without_out_prints_the_box() {
    let out = nonlocal(&["simulate"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["alice_first"].as_object().unwrap().len(), 4);
    assert_eq!(v["bob_first"].as_object().unwrap().len(), 4);
}

#[test]
fn sweep_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let svg = dir.path().join("sweep.svg");
    assert_eq!(code(&["sweep", "--m-start", "0.5", "--m-end", "8", "--steps", "16", "--out", arg(&csv), "--svg", arg(&svg)]), EXIT_OK);

    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,chsh_engine,chsh_closed_form,nco_residual"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|f| f.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 16);
    assert_eq!(rows[0][0], 0.5);
    assert_eq!(rows[15][0], 8.0);
    for r in &rows {
        assert!((r[1] - r[2]).abs() <= 1e-10);
        assert!(r[3] <= 1e-10);
    }

    let picture = std::fs::read_to_string(&svg).unwrap();
    assert!(picture.starts_with("<svg"));
    assert_eq!(picture.matches("<polyline").count(), 1);
    assert_eq!(picture.matches("class=\"reference\"").count(), 2);
    assert_eq!(picture.matches("<circle").count(), 1);
}

#[test]
fn born_verify_reports_one_line_per_rule() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let out = nonlocal(&["born-verify", "--grid", "20", "--rules", "born,power:m=4,power:m=0.5,step", "--out", arg(&path)]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("born\t"));
    assert!(lines[3].starts_with("step\t"));

    let csv = std::fs::read_to_string(&path).unwrap();
    // pairs (i, j) with 1 <= i + j <= 20, per rule, plus the header
    assert_eq!(csv.lines().count(), 1 + 4 * 230);
}

#[test]
fn search_is_reproducible_for_a_fixed_seed() {
    let args = ["search", "--rule", "power:m=4", "--restarts", "3", "--seed", "11"];
    let a = nonlocal(&args);
    let b = nonlocal(&args);
    assert_eq!(a.status.code(), Some(EXIT_OK));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v["residual"].as_f64().unwrap() <= 1e-10);
    assert!(v["chsh"].as_f64().unwrap() > 2.0 * std::f64::consts::SQRT_2);
}

#[test]
fn solve_writes_the_recovered_rule() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("solve.csv");
    let out = nonlocal(&["solve", "--grid", "16", "--out", arg(&path)]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let csv = std::fs::read_to_string(&path).unwrap();
    let values: Vec<(f64, f64)> = csv
        .lines()
        .skip(1)
        .map(|l| {
            let (p, h) = l.split_once(',').unwrap();
            (p.parse().unwrap(), h.parse().unwrap())
        })
        .collect();
    assert_eq!(values.len(), 17);
    assert!(values.iter().all(|(p, h)| (p - h).abs() <= 1e-6));
}
