//! End-to-end tests of the command-line interface: exit codes, formats,
//! determinism, and the compile -> truth-table pipeline.

use std::path::Path;
use std::process::{Command, Output};

fn nandtree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nandtree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn compile_emits_a_document_with_slots() {
    let out = nandtree(&["compile", "a NAND b"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["sites"].as_array().unwrap().len(), 1);
    assert_eq!(doc["meta"]["inputs"]["a"][0], 0);
    assert_eq!(doc["meta"]["inputs"]["b"][0], 0);
}

#[test]
fn compile_reports_parse_errors_with_position_and_exit_2() {
    let out = nandtree(&["compile", "(("]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("position 2"), "stderr: {err}");
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = nandtree(&["transmit", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn zero_length_grid_is_rejected() {
    let out = nandtree(&[
        "sweep",
        "--builtin",
        "nand3-one",
        "--param",
        "alpha_N",
        "--values",
        "",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn truth_table_matches_de_morgan_nand() {
    // !a | !b has the NAND truth table
    let a = nandtree(&["truth-table", "--expr", "!a | !b"]);
    let b = nandtree(&["truth-table", "--expr", "a NAND b"]);
    assert!(a.status.success() && b.status.success());
    let strip_header = |text: String| -> Vec<String> {
        text.lines()
            .skip(1)
            .map(|line| line.split(',').skip(2).collect::<Vec<_>>().join(","))
            .collect()
    };
    assert_eq!(strip_header(stdout(&a)), strip_header(stdout(&b)));
}

#[test]
fn compiled_circuit_round_trips_through_truth_table() {
    let dir = tempfile::tempdir().unwrap();
    let doc_path = dir.path().join("circuit.json");
    let out = nandtree(&["compile", "a NAND b", "--out", doc_path.to_str().unwrap()]);
    assert!(out.status.success());
    let from_file = nandtree(&["truth-table", "--circuit", doc_path.to_str().unwrap()]);
    assert!(from_file.status.success());
    let text = stdout(&from_file);
    // no oracle column without the expression, but the outputs match NAND
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].ends_with(",1"));
    assert!(rows[3].ends_with(",0"));
}

#[test]
fn transmit_output_is_deterministic() {
    let args = [
        "transmit",
        "--builtin",
        "nand3-carbon",
        "--emin",
        "-1.5",
        "--emax",
        "1.5",
        "--points",
        "31",
        "--threads",
        "4",
    ];
    let a = nandtree(&args);
    let b = nandtree(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "byte-identical output");
}

#[test]
fn json_format_is_supported() {
    let out = nandtree(&[
        "transmit", "--tree", "01", "--engine", "qst", "--points", "3", "--emin", "-1", "--emax",
        "1", "--format", "json",
    ]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 3);
    assert!(rows[0]["T"].is_number());
}

#[test]
fn gnuplot_script_lands_next_to_the_data() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("dip.csv");
    let out = nandtree(&[
        "transmit",
        "--builtin",
        "nand3-carbon",
        "--points",
        "11",
        "--out",
        data.to_str().unwrap(),
        "--gnuplot",
    ]);
    assert!(out.status.success());
    assert!(data.exists());
    assert!(Path::new(&format!("{}.gp", data.display())).exists());
}

#[test]
fn config_file_sets_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.json");
    std::fs::write(&config, r#"{"eta": 1e-6, "pad": 3}"#).unwrap();
    let with_config = nandtree(&[
        "transmit",
        "--tree",
        "11",
        "--points",
        "1",
        "--emin",
        "0",
        "--emax",
        "0",
        "--config",
        config.to_str().unwrap(),
    ]);
    assert!(with_config.status.success());
    // eta = 1e-6 lifts the dip floor well above the default
    let t_config: f64 = stdout(&with_config)
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    let with_flag = nandtree(&[
        "transmit",
        "--tree",
        "11",
        "--points",
        "1",
        "--emin",
        "0",
        "--emax",
        "0",
        "--config",
        config.to_str().unwrap(),
        "--eta",
        "1e-10",
    ]);
    let t_flag: f64 = stdout(&with_flag)
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!(t_config > 1e-14, "config eta applied: {t_config}");
    assert!(t_flag < t_config / 1e4, "flag overrides config: {t_flag}");
}

#[test]
fn depth3_tree_classifies_to_one() {
    let out = nandtree(&["truth-table", "--tree", "00011011", "--engine", "both"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("1,1,"), "row: {row}");
}

#[test]
fn huckel_catalog_tree_reports_indeterminate_with_transmission() {
    let out = nandtree(&[
        "truth-table",
        "--builtin",
        "nand3-one",
        "--engine",
        "negf",
        "--preset",
        "huckel",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().nth(1).unwrap().starts_with("indeterminate,"));
}

#[test]
fn thousand_point_grid_stays_inside_the_time_budget() {
    let start = std::time::Instant::now();
    let out = nandtree(&[
        "transmit",
        "--builtin",
        "nand3-carbon",
        "--emin",
        "-2",
        "--emax",
        "2",
        "--points",
        "1001",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 1002);
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn verify_list_enumerates_criteria() {
    let out = nandtree(&["verify", "--list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 9);
    assert!(text.starts_with("1:"));
}

#[test]
fn corrupted_preset_file_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let preset = dir.path().join("huckel.json");
    // beta_nc sign flipped
    std::fs::write(
        &preset,
        r#"{
            "beta_cc_single": -2.4, "beta_cc_double": -2.7,
            "beta_cc_triple": -3.0, "beta_cc_cross": -2.55,
            "beta_nc": 1.08, "beta_sc": -2.16,
            "alpha_n": -2.7, "alpha_s": -4.05, "alpha_c": 0.0
        }"#,
    )
    .unwrap();
    let out = nandtree(&[
        "verify",
        "--list",
        "--preset-file",
        preset.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("beta_nc"), "stderr: {err}");
}

#[test]
fn expr_source_rejects_open_variables() {
    let out = nandtree(&["transmit", "--expr", "a NAND b", "--points", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("open variables"), "stderr: {err}");
}

#[test]
fn qst_engine_rejects_two_terminal_structures() {
    let out = nandtree(&["transmit", "--builtin", "anchored-00", "--engine", "qst"]);
    assert_eq!(out.status.code(), Some(2));
}
