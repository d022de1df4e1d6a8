use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ontic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ontic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn simulate_csv_rows() {
    let out = ontic(&["simulate", "--a2", "1/3", "--chi", "0,pi"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let sweep = text.split("\n\n").next().unwrap();
    let mut rdr = csv::Reader::from_reader(sweep.as_bytes());
    assert_eq!(rdr.headers().unwrap(), vec!["chi", "P3", "P4", "P2"]);
    let rows: Vec<Vec<f64>> = rdr
        .records()
        .map(|r| r.unwrap().iter().map(|x| x.parse().unwrap()).collect())
        .collect();
    let expect = [[0.0, 2.0 / 3.0, 0.0, 1.0 / 3.0], [std::f64::consts::PI, 0.0, 2.0 / 3.0, 1.0 / 3.0]];
    for (row, want) in rows.iter().zip(expect) {
        for (x, y) in row.iter().zip(want) {
            assert!((x - y).abs() < 1e-12, "{row:?}");
        }
    }
    assert!(!text.contains("-0"));
}

#[test]
fn simulate_json_is_exact() {
    let out = ontic(&["simulate", "--a2", "1/2", "--chi", "0", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let p = &v["sweep"][0];
    assert_eq!(p["P3"]["exact"], "1");
    assert_eq!(p["P4"]["exact"], "0");
    assert_eq!(p["P2"]["exact"], "0");
    let blocked = v["blocked"].as_array().unwrap();
    let no = blocked.iter().find(|e| e["beta"] == "∅" && e["alpha"] == "No").unwrap();
    assert_eq!(no["p"]["exact"], "1/2");
}

#[test]
fn simulate_out_of_range() {
    let out = ontic(&["simulate", "--a2", "0.6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hypothesis out of range"));
}

#[test]
fn simulate_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = ontic(&["simulate", "--chi", "0,pi/3,pi/2,pi", "--out", path(dir.path())]);
    assert_eq!(out.status.code(), Some(0));
    for f in ["sweep.csv", "joint.csv", "simulate.json"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let v: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("simulate.json")).unwrap()).unwrap();
    assert_eq!(v["sweep"].as_array().unwrap().len(), 4);
    assert_eq!(v["sweep"][1]["chi"], "pi/3");
}

#[test]
fn check_hroi2_infeasible() {
    let out = ontic(&["check", "hroi2", "--a2", "1/3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["status"], "infeasible");
    assert_eq!(v["certificate"]["verified"], true);
    assert_eq!(v["oracle"]["agrees"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("certificate"));
}

#[test]
fn check_hroi2_relaxed_writes_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = ontic(&["check", "hroi2", "--a2", "1/3", "--relax", "psi_anomic", "--out", path(dir.path())]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["status"], "feasible");
    assert_eq!(v["witness_reproduces"], true);
    let witness = dir.path().join("hroi2-witness.json");
    let audit = ontic(&["model", "audit", path(&witness)]);
    assert_eq!(audit.status.code(), Some(0));
    let a = stdout_json(&audit);
    assert_eq!(a["reproduces"], true);
    assert_eq!(a["assumptions"]["psi_anomic"]["result"], "fail");
}

#[test]
fn check_pbr_lists_zeros() {
    let out = ontic(&["check", "pbr"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["status"], "contradiction");
    let trace = v["trace"].as_array().unwrap();
    let zeros = trace.iter().filter(|s| s["statement"].as_str().unwrap().ends_with("= 0 exactly")).count();
    assert_eq!(zeros, 4);
    assert_eq!(trace.last().unwrap()["relation"], "conflict");
}

#[test]
fn check_hroi_with_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(&cfg, r#"{"a2": "1/4", "relax": ["roi"]}"#).unwrap();
    let out = ontic(&["check", "hroi", "--config", path(&cfg)]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["status"], "feasible");
    assert_eq!(v["parameters"]["a2"], "1/4");
    assert_ne!(v["max_overlap"], "0");
}

#[test]
fn check_usage_errors() {
    assert_eq!(ontic(&["check", "hroi2", "--relax", "pip"]).status.code(), Some(1));
    assert_eq!(ontic(&["check", "hroi2", "--format", "csv"]).status.code(), Some(1));
    assert_ne!(ontic(&["check", "nothing"]).status.code(), Some(0));
}

#[test]
fn repeated_runs_are_identical() {
    let a = ontic(&["check", "hroi2", "--a2", "1/4"]);
    let b = ontic(&["check", "hroi2", "--a2", "1/4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn counterexample_then_audit() {
    let dir = tempfile::tempdir().unwrap();
    let out = ontic(&["model", "counterexample", "--out", path(dir.path())]);
    assert_eq!(out.status.code(), Some(0));
    let file = dir.path().join("counterexample.json");
    let a = stdout_json(&ontic(&["model", "audit", path(&file)]));
    assert_eq!(a["reproduces"], true);
    assert_eq!(a["assumptions"]["psi_anomic"]["result"], "fail");
    let pair = a["overlaps"]
        .as_array()
        .unwrap()
        .iter()
        .find(|o| o["preparations"] == serde_json::json!(["psi_plus", "psi_0"]) || o["preparations"] == serde_json::json!(["psi_0", "psi_plus"]))
        .unwrap()
        .clone();
    assert_eq!(pair["overlap"], "1");

    let lifted = ontic(&["model", "lift", path(&file), "--out", path(dir.path())]);
    assert_eq!(lifted.status.code(), Some(0));
    let a = stdout_json(&ontic(&["model", "audit", path(&dir.path().join("lifted.json"))]));
    assert_eq!(a["reproduces"], true);
    assert_eq!(a["assumptions"]["psi_anomic"]["result"], "pass");
    assert_eq!(a["assumptions"]["roi"]["result"], "fail");
    assert_eq!(a["psi_ontic"], true);
    assert!(a["overlaps"].as_array().unwrap().iter().all(|o| o["overlap"] == "0"));
}

#[test]
fn audit_hand_disjoint_model() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("disjoint.json");
    fs::write(
        &file,
        r#"{
  "ontic_states": ["l0", "l1"],
  "epistemic_states": [
    {"preparation": "a", "weights": {"l0": "1", "l1": "0"}},
    {"preparation": "b", "weights": {"l0": "0", "l1": "1"}}
  ],
  "responses": [
    {"context": "M", "outcomes": ["x", "y"], "entries": {"l0": ["1", "0"], "l1": ["0", "1"]}}
  ],
  "assumptions": {"psi_anomic": true, "pip": true, "pip_ps": false, "roi": false}
}"#,
    )
    .unwrap();
    let out = ontic(&["model", "audit", path(&file)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let a = stdout_json(&out);
    assert_eq!(a["psi_ontic"], true);
    assert!(a.get("reproduces").is_none());
}

#[test]
fn malformed_model_names_location() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    fs::write(
        &file,
        r#"{
  "ontic_states": ["l0"],
  "epistemic_states": [{"preparation": "a", "weights": {"l0": "1"}}],
  "responses": [{"context": "M", "outcomes": ["x"], "entries": {"l0": ["one"]}}],
  "assumptions": {"psi_anomic": true, "pip": true, "pip_ps": false, "roi": false}
}"#,
    )
    .unwrap();
    let out = ontic(&["model", "audit", path(&file)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("responses[0].entries.l0[0]"));
}
