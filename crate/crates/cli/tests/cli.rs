//! End-to-end tests of the binary: exit codes, report shapes, input formats.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_indirank"))
}

fn fig1_json() -> PathBuf {
    let dir = std::env::temp_dir().join("indirank-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig1.json");
    let out = bin()
        .args(["fixture", "fig1", "--output", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    path
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

#[test]
fn rate_row_sum_fig1() {
    let input = fig1_json();
    let out = bin()
        .args(["rate", "--input", input.to_str().unwrap(), "--method", "row_sum"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    let scores: Vec<f64> = report["scores"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["score"].as_f64().unwrap())
        .collect();
    assert_eq!(scores, vec![4.5, 1.5, 1.5, 1.5]);
    assert_eq!(report["ranking"][0], "1");
    // the three 1.5s form one tie group
    assert_eq!(report["ties"].as_array().unwrap().len(), 1);
    assert_eq!(report["ties"][0].as_array().unwrap().len(), 3);
}

#[test]
fn rate_inapplicable_method_is_exit_2() {
    let input = fig1_json();
    let out = bin()
        .args(["rate", "--input", input.to_str().unwrap(), "--method", "wei"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["code"], "NOT_INDIVISIBLE");
}

#[test]
fn rate_epsilon_out_of_range_is_exit_2() {
    let input = fig1_json();
    let out = bin()
        .args([
            "rate",
            "--input",
            input.to_str().unwrap(),
            "--method",
            "grs",
            "--epsilon",
            "1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["code"], "EPSILON_OUT_OF_RANGE");
}

#[test]
fn rate_invalid_input_is_exit_1() {
    let dir = std::env::temp_dir().join("indirank-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = bin()
        .args(["rate", "--input", path.to_str().unwrap(), "--method", "row_sum"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"]["code"], "INVALID_INPUT");

    let path = dir.join("self.json");
    std::fs::write(
        &path,
        r#"{"alternatives": ["x", "y"], "judges": [{"comparisons": [{"a": "x", "b": "x", "outcome": "draw"}]}]}"#,
    )
    .unwrap();
    let out = bin()
        .args(["rate", "--input", path.to_str().unwrap(), "--method", "row_sum"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"]["code"], "SELF_COMPARISON");
}

#[test]
fn bad_arguments_are_exit_1() {
    let input = fig1_json();
    let out = bin()
        .args(["rate", "--input", input.to_str().unwrap(), "--method", "bogus"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = bin()
        .args([
            "rate",
            "--input",
            input.to_str().unwrap(),
            "--method",
            "row_sum",
            "--epsilon",
            "0.1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = bin().args(["rate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn audit_row_sum_fig1_is_exit_4() {
    let input = fig1_json();
    let out = bin()
        .args([
            "audit",
            "--input",
            input.to_str().unwrap(),
            "--method",
            "row_sum",
            "--splitting-balance",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let report = stdout_json(&out);
    let pairs: Vec<(String, String)> = report["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| {
            (
                v["i"].as_str().unwrap().to_string(),
                v["j"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    assert!(pairs.contains(&("3".to_string(), "4".to_string())));
    assert_eq!(report["splitting_balance"]["verdict"], "pass");
}

#[test]
fn audit_grs_fig1_is_clean() {
    let input = fig1_json();
    let out = bin()
        .args([
            "audit",
            "--input",
            input.to_str().unwrap(),
            "--method",
            "grs",
            "--epsilon",
            "0.055555",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert!(report["violations"].as_array().unwrap().is_empty());
}

#[test]
fn audit_least_squares_flags_one_three() {
    let input = fig1_json();
    let out = bin()
        .args([
            "audit",
            "--input",
            input.to_str().unwrap(),
            "--method",
            "least_squares",
            "--splitting-balance",
            "--macrovertex",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let report = stdout_json(&out);
    let pairs: Vec<(String, String)> = report["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| {
            (
                v["i"].as_str().unwrap().to_string(),
                v["j"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    assert!(pairs.contains(&("1".to_string(), "3".to_string())));
    assert_eq!(report["splitting_balance"]["verdict"], "pass");
    assert!(report["macrovertices"]["proper"].as_array().unwrap().is_empty());
}

#[test]
fn search_finds_and_reports_counterexample() {
    let out = bin()
        .args([
            "search",
            "--method",
            "hasse",
            "--seed",
            "42",
            "--budget",
            "10000",
            "--indivisible-only",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["found"], true);
    let profile = &report["counterexample"]["profile"];
    assert!(profile["alternatives"].as_array().unwrap().len() >= 3);
    assert_eq!(report["counterexample"]["violation"]["requirement"], "strict");
}

#[test]
fn search_zero_budget_reports_nothing() {
    let out = bin()
        .args(["search", "--method", "hasse", "--budget", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["found"], false);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no violation in 0 trials"));
}

#[test]
fn reproduce_all_passes() {
    let out = bin().args(["reproduce", "all"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for name in ["fig1", "prop2", "prop10"] {
        assert!(text.contains(&format!("reproduce {name}: PASS")), "missing {name}: {text}");
    }
}

#[test]
fn csv_and_json_inputs_agree() {
    let dir = std::env::temp_dir().join("indirank-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let csv_path = dir.join("fig1.csv");
    let mut rows = String::from("judge,a,b,outcome\n");
    for j in 1..=3 {
        rows.push_str(&format!("j{j},1,2,a_wins\n"));
    }
    for j in 4..=6 {
        rows.push_str(&format!("j{j},1,3,draw\n"));
    }
    for j in 7..=9 {
        rows.push_str(&format!("j{j},2,4,draw\n"));
    }
    std::fs::write(&csv_path, rows).unwrap();
    let out_csv = bin()
        .args(["rate", "--input", csv_path.to_str().unwrap(), "--method", "row_sum"])
        .output()
        .unwrap();
    assert_eq!(out_csv.status.code(), Some(0));

    let json_input = fig1_json();
    let out_json = bin()
        .args(["rate", "--input", json_input.to_str().unwrap(), "--method", "row_sum"])
        .output()
        .unwrap();
    assert_eq!(stdout_json(&out_csv)["scores"], stdout_json(&out_json)["scores"]);
}

#[test]
fn fixture_round_trips_through_rate() {
    // the exported prop2 document feeds straight back into the tool
    let dir = std::env::temp_dir().join("indirank-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("prop2.json");
    let out = bin()
        .args(["fixture", "prop2", "--output", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = bin()
        .args(["rate", "--input", path.to_str().unwrap(), "--method", "wei"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert!(report["diagnostics"]["lambda"].as_f64().unwrap() > 0.0);
    let s2 = report["scores"][1]["score"].as_f64().unwrap();
    let s3 = report["scores"][2]["score"].as_f64().unwrap();
    assert!((s2 - s3).abs() <= 1e-9);
}

#[test]
fn unknown_fixture_is_exit_1() {
    let out = bin().args(["fixture", "fig9"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"]["code"], "UNKNOWN_FIXTURE");
}
