//! End-to-end tests of the command-line interface: exit codes, JSON output
//! that parses back into the library types, and DOT output that satisfies
//! the graph grammar.

mod common;

use std::path::PathBuf;
use std::process::{Command, Output};

use ultimatum::classical::{build_gamma1, normal_representation, Bimatrix, GameParams};
use ultimatum::equilibrium::{pure_nash, EquilibriumReport};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ultimatum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("ultimatum-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("writable temp dir");
    path
}

#[test]
fn classical_table_reports_equilibria() {
    let output = run(&["classical", "--delta", "0.7"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("pure Nash equilibria"));
    assert!(text.contains("(c1, d0e0)"));
    assert!(text.contains("0.714286"));
}

#[test]
fn classical_json_round_trips_into_library_types() {
    let output = run(&["classical", "--delta", "0.7", "--format", "json"]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();

    let matrix: Bimatrix = serde_json::from_value(value["bimatrix"].clone()).unwrap();
    let report: EquilibriumReport = serde_json::from_value(value["equilibrium"].clone()).unwrap();

    let params = GameParams::new(0.7, 1.0).unwrap();
    let expected_matrix = normal_representation(&build_gamma1(&params));
    assert_eq!(matrix, expected_matrix);
    assert_eq!(report, pure_nash(&expected_matrix));
}

#[test]
fn out_of_range_delta_is_an_input_error() {
    let output = run(&["classical", "--delta", "0.4"]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("delta"));
}

#[test]
fn mw_preset_reports_distinct_payoffs() {
    let output = run(&["mw", "--state", "psi_in1", "--format", "json"]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["distinct_payoffs"], 5);
    assert_eq!(value["state"], "psi_in1");
}

#[test]
fn mw_accepts_amplitude_files_and_rejects_unnormalized_ones() {
    let good = temp_file(
        "good-state.json",
        r#"{"amplitudes": [[0.5,0],[0.5,0],[0,0],[0,0],[0.5,0],[0,0],[0.5,0],[0,0]]}"#,
    );
    let output = run(&["mw", "--state", good.to_str().unwrap(), "--format", "json"]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["state"], "custom");

    let bad = temp_file(
        "bad-state.json",
        r#"{"amplitudes": [[0.9,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]}"#,
    );
    let output = run(&["mw", "--state", bad.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));

    let output = run(&["mw", "--state", "no-such-preset"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn ewl_analyzes_a_profile_file() {
    let profile = temp_file(
        "profile.json",
        r#"{"theta": [3.141592653589793, 0, 0], "beta": [0, 0, 0]}"#,
    );
    let output = run(&[
        "ewl",
        "--profile",
        profile.to_str().unwrap(),
        "--grid-step",
        "0.2",
        "--format",
        "json",
    ]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let analysis = &value["profiles"][0];
    // The unfair-acceptance profile: payoff (0.7, 0.3), refuted by the grid.
    assert!((analysis["payoff"]["E1"].as_f64().unwrap() - 0.7).abs() < 1e-9);
    assert!((analysis["payoff"]["E2"].as_f64().unwrap() - 0.3).abs() < 1e-9);
    assert_eq!(analysis["grid_ne"], false);
    assert_eq!(value["seed"], 0);
}

#[test]
fn ewl_family_samples_pass_the_grid() {
    let output = run(&[
        "ewl",
        "--family",
        "subset1",
        "--samples",
        "2",
        "--seed",
        "7",
        "--grid-step",
        "0.2",
        "--format",
        "json",
    ]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let profiles = value["profiles"].as_array().unwrap();
    assert_eq!(profiles.len(), 2);
    for analysis in profiles {
        assert_eq!(analysis["in_subset1"], true);
        assert_eq!(analysis["grid_ne"], true);
        assert!((analysis["payoff"]["E1"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    }
}

#[test]
fn ewl_without_inputs_is_an_input_error() {
    let output = run(&["ewl"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn tree_dot_output_satisfies_the_graph_grammar() {
    for state in ["basis000", "psi_in1", "plus_plus_plus"] {
        let output = run(&["tree", "--state", state, "--format", "dot"]);
        assert!(output.status.success());
        let dot = stdout(&output);
        common::check_dot_grammar(&dot).unwrap_or_else(|e| panic!("invalid DOT for {state}: {e}"));
    }
}

#[test]
fn tree_json_lists_nodes_edges_and_pruned_branches() {
    let output = run(&["tree", "--state", "basis000", "--format", "json"]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let tree = &value["tree"];
    assert_eq!(tree["root"], "root");
    assert_eq!(tree["pruned"].as_array().unwrap().len(), 2);
    assert!(tree["nodes"].as_array().unwrap().len() >= 7);
    assert!(tree["edges"].as_array().unwrap().is_empty().eq(&false));
    assert_eq!(value["state"], "basis000");
}

#[test]
fn verify_passes_with_a_coarser_grid() {
    let output = run(&["verify", "--grid-step", "0.1", "--format", "json"]);
    assert!(
        output.status.success(),
        "verify failed: {}",
        stdout(&output)
    );
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["passed"], true);
    assert_eq!(value["claims"].as_array().unwrap().len(), 12);
    assert_eq!(value["seed"], 0);
}

#[test]
fn dot_format_is_tree_only() {
    let output = run(&["classical", "--format", "dot"]);
    assert_eq!(output.status.code(), Some(2));
    let output = run(&["mw", "--format", "dot"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn verify_rejects_bad_settings() {
    let output = run(&["verify", "--grid-step", "0"]);
    assert_eq!(output.status.code(), Some(2));
    let output = run(&["verify", "--money", "-1"]);
    assert_eq!(output.status.code(), Some(2));
}
