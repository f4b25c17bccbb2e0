use std::fs;
use std::process::Command;

use lgms::config::{Outputs, RunConfig, Suite};
use lgms::report::{run_surface, Report, SurfaceRun};
use serde_json::Value;

fn lgms(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_lgms")).args(args).output().expect("binary runs")
}

fn config(surfaces: &[&str], suites: &[Suite]) -> RunConfig {
    RunConfig {
        surfaces: surfaces.iter().map(|s| s.to_string()).collect(),
        suites: suites.to_vec(),
        ..RunConfig::default()
    }
}

#[test]
fn bl3_theorem_a_has_36_rows_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("bl3.json");
    let out = lgms(&["verify", "--surface", "bl3", "--suite", "theorem-a", "--json", json.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["version"], 1);
    let rows = v["surfaces"][0]["theorem_a"].as_array().unwrap();
    assert_eq!(rows.len(), 36);
    assert!(rows.iter().all(|r| r["pass"] == true && r["path"].as_array().unwrap().len() <= 512));
}

#[test]
fn p2_exceptional_table() {
    let report = lgms::run(&config(&["p2"], &[Suite::Ew]), &Outputs::default()).unwrap();
    let v = report.to_json();
    let classes: Vec<Value> = v["surfaces"][0]["ew"].as_array().unwrap().iter().map(|r| r["class"].clone()).collect();
    assert_eq!(classes, [serde_json::json!([0]), serde_json::json!([1]), serde_json::json!([2])]);
}

#[test]
fn failing_surface_gives_nonzero_exit() {
    let out = lgms(&["verify", "--surface", "p2", "--suite", "theorem-a", "--orientation", "+1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = lgms(&["verify", "--surface", "p2", "--suite", "theorem-a", "--orientation", "-1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn invalid_input_is_an_error() {
    assert_eq!(lgms(&["verify", "--surface", "dp4"]).status.code(), Some(2));
    assert_eq!(lgms(&["verify", "--surface", "p2", "--orientation", "2"]).status.code(), Some(2));
    assert_eq!(lgms(&["verify", "--surface", "p2", "--snap-tol", "-1"]).status.code(), Some(2));
}

#[test]
fn json_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("r{i}.json"))).collect();
    for p in &paths {
        let out = lgms(&["verify", "--surface", "p2,bl1,projbundle:s=1,a=1", "--json", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let a = fs::read(&paths[0]).unwrap();
    assert_eq!(a, fs::read(&paths[1]).unwrap());
    let v: Value = serde_json::from_slice(&a).unwrap();
    let names: Vec<_> = v["surfaces"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["p2", "bl1", "projbundle:s=1,a=1"]);
    assert!(v["surfaces"][0].get("timings_ms").is_none());
}

#[test]
fn collection_section_for_p1xp1() {
    let report = lgms::run(&config(&["p1xp1"], &[Suite::Collection]), &Outputs::default()).unwrap();
    assert!(report.pass());
    let c = &report.to_json()["surfaces"][0]["collection"];
    assert_eq!(c["order"], serde_json::json!([[0, 0], [0, 1], [1, 0], [1, 1]]));
    assert_eq!(c["verdicts"]["strong"], true);
    assert_eq!(c["h0"][0], serde_json::json!([1, 2, 2, 4]));
}

#[test]
fn svg_for_p2_has_six_paths_ending_on_lattice_points() {
    let run = run_surface("p2", &config(&["p2"], &[Suite::TheoremA]));
    let svg = lgms::svg::render(&run);
    assert_eq!(svg.matches("<polyline").count(), 6);
    assert_eq!(svg.matches("<circle").count(), 3);
    for label in ["(0,0)", "(1,0)", "(0,1)", "(2,0)", "(0,2)"] {
        assert!(svg.contains(label), "{label}");
    }
}

#[test]
fn empty_run_draws_only_the_grid() {
    let run = SurfaceRun {
        name: "empty".into(),
        t: 0.0,
        pass: true,
        diagnostics: Vec::new(),
        crit: None,
        ew: None,
        theorem_a: None,
        collection: None,
        timings_ms: Vec::new(),
        labels: Vec::new(),
        dim: 2,
    };
    let svg = lgms::svg::render(&run);
    assert!(!svg.contains("<polyline") && !svg.contains("<circle"));
    assert_eq!(svg.matches("<line").count(), 4);
    assert_eq!(svg.matches("<text").count(), 4);
    let report = Report { config: config(&["p2"], &[]), surfaces: vec![run] };
    assert_eq!(report.to_json()["surfaces"][0]["name"], "empty");
}

#[test]
fn artifacts_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let outputs = Outputs {
        json: Some(dir.path().join("r.json")),
        svg_dir: Some(dir.path().join("svg")),
        trace_csv: Some(dir.path().join("trace.csv")),
    };
    let report = lgms::run(&config(&["bl1"], &[Suite::All]), &outputs).unwrap();
    assert!(report.pass());
    assert!(dir.path().join("svg/bl1.svg").exists());
    let csv = fs::read_to_string(dir.path().join("trace.csv")).unwrap();
    assert!(csv.starts_with("surface,z,sigma,sample,theta,lift_1,lift_2\n"));
    assert!(csv.lines().count() > 16);
}
