use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gluing")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn obs_reports_agreeing_routes() {
    let out = run(&["obs", "--group", "D8", "--functor", "bdual", "--routes", "direct,bar", "--degrees", "-1..0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["routes_agree"], true);
    assert_eq!(v["limit_iso"], true);
    let bar = &v["routes"][1]["results"];
    assert_eq!(bar.as_array().unwrap().len(), 2);
    assert_eq!(bar[0]["result"]["rank"], 1);
}

#[test]
fn table_defaults_to_formula_and_orbit() {
    let out = run(&["obs", "--group", "XS(3,+)", "--table", "dt"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["routes"][0]["route"], "formula");
    assert_eq!(v["routes"][1]["route"], "orbit");
    assert_eq!(v["routes"][1]["results"][0]["result"]["torsion"], serde_json::json!([2, 2, 2]));
}

#[test]
fn input_errors_exit_3_and_still_write_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["--out", path.to_str().unwrap(), "obs", "--group", "D8", "--table", "dt", "--routes", "bar"]);
    assert_eq!(out.status.code(), Some(3));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["exit_code"], 3);
    assert_eq!(run(&["obs", "--group", "nonsense", "--functor", "constant"]).status.code(), Some(3));
    assert_eq!(run(&["obs", "--group", "D8", "--functor", "constant", "--degrees", "2..1"]).status.code(), Some(3));
}

#[test]
fn caps_exit_4() {
    assert_eq!(run(&["obs", "--group", "C4", "--functor", "constant", "--element-cap", "2"]).status.code(), Some(4));
    let out = run(&["obs", "--group", "C2^2", "--functor", "constant", "--routes", "oliver", "--rank-cap", "1"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["routes"][0]["cap_exceeded"], true);
}

#[test]
fn verify_and_groups() {
    let out = run(&["--jobs", "2", "verify", "central-rank", "--groups", "C2^2,D8,C2xC4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["groups"].as_array().unwrap().len(), 3);
    assert_eq!(run(&["verify", "no-such-identity"]).status.code(), Some(3));

    let list = json(&run(&["groups", "list", "--max-order", "8"]));
    assert!(list.as_array().unwrap().iter().any(|g| g["name"] == "Q8"));
    let d = json(&run(&["groups", "describe", "D16"]));
    assert_eq!(d["p_rank"], 2);
    assert_eq!(d["s_set"]["classes"].as_array().unwrap().len(), 1);
}
