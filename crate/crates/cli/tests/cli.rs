use std::io::Write;
use std::process::{Command, Output};

use serde_json::{json, Value};
use zipsections_cli::emit::{self, Format};
use zipsections_cli::problem::{ProblemSpec, Task};
use zipsections_cli::run::{run, Settings};

fn doc(spec: Value, task: Task) -> Value {
    let spec = ProblemSpec::from_value(&spec).unwrap();
    run(&spec, task, Settings::default()).unwrap()
}

fn schema_error(spec: Value) -> (String, String) {
    let e = ProblemSpec::from_value(&spec).unwrap_err();
    (e.path, e.message)
}

#[test]
fn sl2_sym3_has_two_sections() {
    let d = doc(json!({"datum": {"catalog": "sl2", "q": 2}, "representation": {"sym": 3}}), Task::H0);
    assert_eq!(d["dim"], 2);
    // basis i is x^{3−i} y^i: the sections are x y² and y³
    assert_eq!(d["indices"], json!([2, 3]));
}

#[test]
fn u21_first_special_weight() {
    let d = doc(json!({"datum": {"catalog": "u21", "q": 2}, "lambda": [3, 1, 2]}), Task::H0);
    assert_eq!(d["dim"], 1);
    let nonzero: Vec<&Value> = d["per_weight"].as_array().unwrap().iter().filter(|w| w["dim"] != 0).collect();
    assert_eq!(nonzero, vec![&json!({"weight": [1, 3, 2], "dim": 1})]);
}

#[test]
fn u21_orbits() {
    let d = doc(json!({"datum": {"catalog": "u21", "q": 2}}), Task::Orbits);
    assert_eq!(d["count"], 3);
    let codims: Vec<i64> = d["orbits"].as_array().unwrap().iter().map(|o| o["codim"].as_i64().unwrap()).collect();
    assert_eq!(codims.iter().filter(|&&c| c == 1).count(), 1);
}

#[test]
fn rationals_are_strings() {
    let d = doc(json!({"datum": {"catalog": "u21", "q": 2}}), Task::Describe);
    assert_eq!(d["per_alpha"][0]["delta"], json!(["-2/3", "1/3", "1/3"]));
}

#[test]
fn empty_sections() {
    let d = doc(json!({"datum": {"catalog": "sl2", "q": 3}, "representation": {"sym": 1}}), Task::H0);
    assert_eq!((d["dim"].clone(), d["basis"].clone()), (json!(0), json!([])));
}

#[test]
fn cone_reports_witness() {
    let d = doc(json!({"datum": {"catalog": "u21", "q": 2}, "lambda": [3, 1, 2]}), Task::Cone);
    assert_eq!(d["in_cone"], true);
    assert_eq!(d["witness"], 1);
    assert_eq!(d["closed_form_indices"], d["pipeline_indices"]);
    let d = doc(json!({"datum": {"catalog": "u21", "q": 2}, "lambda": [1, 0, 0]}), Task::Cone);
    assert_eq!((d["in_cone"].clone(), d["witness"].clone()), (json!(false), Value::Null));
}

#[test]
fn hom_from_trivial_is_h0() {
    let base = json!({"datum": {"catalog": "sp4", "q": 2}, "representation": {"trivial": true}, "target": {"tensor": [{"named": "std"}, {"named": "std"}]}});
    let h = doc(base.clone(), Task::Hom);
    let mut spec = base;
    spec["representation"] = spec["target"].take();
    assert_eq!(h["dim"], doc(spec, Task::H0)["dim"]);
}

#[test]
fn paths_agree_on_sl2() {
    let mut dims = Vec::new();
    for path in ["main", "fq", "perf"] {
        let d = doc(json!({"datum": {"catalog": "sl2", "q": 3}, "representation": {"sym": 8}, "options": {"path": path}}), Task::H0);
        dims.push(d["basis"].clone());
    }
    assert!(dims.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn explicit_datum_matches_catalog() {
    let explicit = json!({
        "datum": {"simple_roots": [[2]], "simple_coroots": [[1]], "q": 3},
        "mu": [1],
        "representation": {"sym": 4, "of": {"x": [1], "y": [-1]}}
    });
    let catalog = json!({"datum": {"catalog": "sl2", "q": 3}, "representation": {"sym": 4}});
    assert_eq!(doc(explicit, Task::H0)["basis"], doc(catalog, Task::H0)["basis"]);
}

#[test]
fn unsupported_lphi_is_actionable() {
    let spec = ProblemSpec::from_value(&json!({
        "datum": {"simple_roots": [[1, -1, 0], [0, 1, -1]], "simple_coroots": [[1, -1, 0], [0, 1, -1]], "sigma": [[0, 0, -1], [0, -1, 0], [-1, 0, 0]], "q": 2},
        "mu": [1, 0, 0],
        "representation": {"char": [0, 0, 0]}
    }))
    .unwrap();
    let e = run(&spec, Task::H0, Settings::default()).unwrap_err().to_string();
    assert!(e.contains("\"lphi\""), "{e}");
}

#[test]
fn schema_errors_carry_paths() {
    assert_eq!(schema_error(json!({"datum": {"catalog": "sl2", "q": 6}})).0, "$.datum.q");
    assert_eq!(schema_error(json!({"datum": {"catalog": "e8", "q": 2}})).0, "$.datum.catalog");
    assert_eq!(schema_error(json!({"datum": {"catalog": "sl2", "q": 2}, "extra": 1})).0, "$.extra");
    assert_eq!(schema_error(json!({"datum": {"catalog": "sl2", "q": 2}, "schema": 2})).0, "$.schema");
    assert_eq!(schema_error(json!({"datum": {"catalog": "sl2", "q": 2}, "options": {"path": "x"}})).0, "$.options.path");
    assert_eq!(schema_error(json!({"datum": {"catalog": "sl2", "q": 2}, "mu": [1, "a"]})).0, "$.mu[1]");
    assert_eq!(schema_error(json!({})).0, "$.datum");

    let spec = ProblemSpec::from_value(&json!({
        "datum": {"catalog": "sl2", "q": 2},
        "representation": {"tensor": [{"sym": 1}, {"bogus": 1}]}
    }))
    .unwrap();
    let e = run(&spec, Task::H0, Settings::default()).unwrap_err();
    let e = e.downcast_ref::<zipsections_cli::problem::SchemaError>().unwrap();
    assert_eq!(e.path, "$.representation.tensor[1]");
}

#[test]
fn task_mismatch_is_an_error() {
    let spec = ProblemSpec::from_value(&json!({"task": "orbits", "datum": {"catalog": "sl2", "q": 2}})).unwrap();
    assert!(run(&spec, Task::H0, Settings::default()).is_err());
}

#[test]
fn table_output_is_aligned() {
    let d = doc(json!({"datum": {"catalog": "u21", "q": 2}}), Task::Orbits);
    let t = emit::emit(&d, Format::Table);
    assert!(t.contains("orbits:\n"));
    assert!(t.lines().any(|l| l.trim_start().starts_with("dim  codim  index  length  word")));
}

fn binary(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_zipsections"))
        .args(args)
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn exit_status_contract() {
    let ok = binary(&["h0", "--input", "-"], r#"{"datum": {"catalog": "sl2", "q": 2}, "representation": {"sym": 3}}"#);
    assert_eq!(ok.status.code(), Some(0));
    let bad = binary(&["h0", "--input", "-"], r#"{"datum": {"catalog": "sl2", "q": 4, "x": 0}}"#);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("$.datum.x"));
    let missing = binary(&["h0"], "");
    assert_ne!(missing.status.code(), Some(0));
}

#[test]
fn input_file_and_format_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    std::fs::write(&path, r#"{"datum": {"catalog": "u21", "q": 2}}"#).unwrap();
    let out = binary(&["orbits", "--input", path.to_str().unwrap(), "--format", "table"], "");
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("codim_one  [1]"));
}
