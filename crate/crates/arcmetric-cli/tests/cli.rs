use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_arcmetric"))
}

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn value(v: &Value, path: &[&str]) -> f64 {
    path.iter().fold(v, |v, k| &v[*k]).as_f64().unwrap()
}

#[test]
fn arc_lengths_on_the_symmetric_pants() {
    let v = json_ok(&["arc-length", "--pants", "2,2,2", "--arc", "a12"]);
    assert!((value(&v, &["value"]) - 1.704_912_832_358_013_7).abs() < 1e-12);
    let v = json_ok(&["arc-length", "--pants", "2,2,2", "--arc", "a33"]);
    assert!((value(&v, &["value"]) - 3.612_225_999_682_252).abs() < 1e-12);
    let v = json_ok(&["arc-length", "--pants", "2,2,2", "--arc", "a33", "--via-double"]);
    assert!((value(&v, &["value"]) - 3.612_225_999_682_252).abs() < 1e-9);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["arc-length", "--pants", "2,2,2"]).status.code(), Some(2));
    assert_eq!(run(&["arc-length", "--pants", "2,2", "--arc", "a12"]).status.code(), Some(2));
    assert_eq!(run(&["arc-length", "--pants", "2,2,-2", "--arc", "a12"]).status.code(), Some(3));
    assert_eq!(run(&["curve-length", "--pants", "2,2,2", "--curve", "g[1,1]"]).status.code(), Some(4));
    assert_eq!(run(&["experiment", "dt-sphere", "--surface", "2,0,0"]).status.code(), Some(4));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn distance_reports_both_directions() {
    let v = json_ok(&["distance", "--pants", "--x", "2,2,2", "--y", "4,4,4"]);
    assert!((value(&v, &["forward", "value"]) - 2f64.ln()).abs() < 1e-15);
    assert!((value(&v, &["backward", "value"]) - 0.723_299_042_299_744_8).abs() < 1e-12);
    assert_eq!(v["backward"]["maximizer"], "a12");
    assert_eq!(v["forward"]["panel_N"], 0);
    let v = json_ok(&["distance", "--pants", "--x", "1,2,3", "--y", "1,2,3"]);
    assert_eq!(value(&v, &["forward", "value"]), 0.0);
    assert_eq!(value(&v, &["backward", "value"]), 0.0);
}

#[test]
fn torus_distance_grows_with_the_panel() {
    let at = |n: &str| {
        let v = json_ok(&["distance", "--torus", "--x", "1.5,0.7,0.5", "--y", "0.6,-1.1,0.4", "--panel-n", n]);
        (value(&v, &["forward", "value"]), value(&v, &["backward", "value"]))
    };
    let (f0, b0) = at("0");
    let (f3, b3) = at("3");
    assert!(f3 >= f0 && b3 >= b0);
}

#[test]
fn points_and_laminations_accept_json() {
    let v = json_ok(&["curve-length", "--torus", "--x", r#"{"C1": {"length": 2, "twist": 0}, "B1": 2}"#, "--curve", "g[0,1]"]);
    assert!((value(&v, &["value"]) - 1.704_912_832_358_013_7).abs() < 1e-12);
    let v = json_ok(&["double", "--torus", "1,0.5,2", "--mu", "g[0,1]:2"]);
    assert_eq!(v["genus"], 2);
    assert_eq!(v["point"]["C1bar"]["twist"], -0.5);
    assert_eq!(v["lamination"]["C1bar"], serde_json::json!([2.0, 0.0]));
}

#[test]
fn horofunctions_vanish_at_the_base() {
    let v = json_ok(&["horofn", "--pants", "--base", "2,2,2", "--mu", "a33", "--y", "2,2,2"]);
    assert!(value(&v, &["value"]).abs() < 1e-15);
    let v = json_ok(&["horofn", "--pants", "--base", "2,2,2", "--x", "1,3,2", "--y", "2,2,2"]);
    assert!(value(&v, &["value"]).abs() < 1e-15);
}

#[test]
fn dt_sphere_on_the_one_holed_torus() {
    let v = json_ok(&["experiment", "dt-sphere", "--surface", "1,0,1"]);
    assert_eq!(v["coordinate_dim"], 3);
    assert_eq!(v["sphere_dim"], 2);
    assert_eq!(v["round_trips"], v["decoded"]);
    assert!(v["round_trips"].as_u64().unwrap() > 100);
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let mut rows = vec![r.headers().unwrap().iter().map(String::from).collect()];
    rows.extend(r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()));
    rows
}

#[test]
fn cprime_deviation_settles_at_the_offset() {
    let out = run(&["experiment", "inequality", config("demo_cprime.json").to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows = csv_rows(&text);
    assert_eq!(rows[0][..3], ["t", "panel_N", "a12"]);
    let last = rows.last().unwrap();
    let dev: f64 = last[2].parse().unwrap();
    assert!((dev - 1.303_644_651_894_054_4).abs() < 1e-8, "{dev}");
    let summary: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(summary["flagged"], 0);
}

#[test]
fn experiment_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["torus_boundary.json", "pants_horofunction.json"] {
        let verb = if name.starts_with("torus") { "boundary-limit" } else { "horo-converge" };
        let mut texts = Vec::new();
        for (k, mode) in ["--sequential", ""].iter().enumerate() {
            let csv = dir.path().join(format!("{name}.{k}.csv"));
            let summary = dir.path().join(format!("{name}.{k}.json"));
            let cfg = config(name);
            let mut args = vec!["experiment", verb, cfg.to_str().unwrap()];
            args.extend(["--csv", csv.to_str().unwrap(), "--summary", summary.to_str().unwrap()]);
            if !mode.is_empty() {
                args.push(mode);
            }
            let out = run(&args);
            assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
            texts.push(std::fs::read(&csv).unwrap());
        }
        assert_eq!(texts[0], texts[1], "{name}");
        let rows = csv_rows(std::str::from_utf8(&texts[0]).unwrap());
        assert_eq!(rows[0][1], "panel_N");
        let first: f64 = rows[1][2].parse().unwrap();
        let last: f64 = rows.last().unwrap()[2].parse().unwrap();
        assert!(last < 1e-3 && last < first, "{name}: {first} -> {last}");
    }
}

#[test]
fn separation_finds_a_witness() {
    let out = run(&["experiment", "separate", config("pants_separation.json").to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summary: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(value(&summary, &["witness", "gap"]) >= 1e-3);
}

#[test]
fn malformed_config_names_line_and_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"surface\": {\"boundaries\": 3},\n  \"grid\": {\"start\": 0, \"stop\": 1, \"step\": 0.5},\n  \"panel_N\": -1\n}\n").unwrap();
    let out = run(&["experiment", "inequality", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 4") && err.contains("`panel_N`"), "{err}");

    std::fs::write(&path, r#"{"surface": {"boundaries": 3}, "base": {"B1": 1, "B2": 1, "B3": 2}}"#).unwrap();
    let out = run(&["experiment", "inequality", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("`mu`"));
}
