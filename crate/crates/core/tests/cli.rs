use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use epr_auth::cli::{reproduce_paper, PaperOptions};
use epr_auth::quantum::{Gate1, C64};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_epr-auth"))
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn honest_session_exits_zero() {
    let out = run(&["session", "--scenario", scenario("honest.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["config_echo"]["command"], "session");
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r["prob_pass"] == 1.0 && r["outcome"] == "pass"));
}

#[test]
fn impersonated_session_exits_one() {
    let out = run(&["session", "--scenario", scenario("impersonation.json").to_str().unwrap(), "--seed", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let last = v["results"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(last["verdict"]["verdict"], "aborted");
    assert_eq!(last["keys_retained"], false);
}

#[test]
fn bad_configs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("not json", "{ K: 1"),
        ("unknown field", r#"{"K": 1, "K_prime": 1, "theta_mode": "random", "colour": 3}"#),
        ("K_prime above K", r#"{"K": 1, "K_prime": 2, "theta_mode": "random"}"#),
        ("unknown strategy", r#"{"K": 1, "K_prime": 1, "theta_mode": "random", "strategy": "teleport"}"#),
        ("bad sweep", r#"{"K": 1, "K_prime": 1, "theta_mode": "random", "sweep": {"parameter": "K"}}"#),
    ];
    for (name, text) in cases {
        let p = dir.path().join("s.json");
        std::fs::write(&p, text).unwrap();
        let out = run(&["estimate", "--scenario", p.to_str().unwrap(), "--trials", "10"]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(!out.stderr.is_empty(), "{name}");
    }
    assert_eq!(run(&["estimate"]).status.code(), Some(2));
    assert_eq!(run(&["estimate", "--scenario", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["estimate", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let path = scenario("honest.json");
    assert_eq!(run(&["estimate", "--scenario", path.to_str().unwrap(), "--trials", "0"]).status.code(), Some(2));
}

#[test]
fn estimate_report_shape() {
    let out = run(&["estimate", "--scenario", scenario("impersonation_challenge.json").to_str().unwrap(), "--trials", "2000"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["schema_version", "config_echo", "results"]);
    assert_eq!(v["config_echo"]["trials"], 2000);
    assert_eq!(v["config_echo"]["scenario"]["K"], 1);
    let r = &v["results"][0];
    for k in ["quantity", "mean", "std_error", "ci_low", "ci_high", "trials", "oracle", "oracle_formula", "z"] {
        assert!(r.get(k).is_some(), "{k}");
    }
    assert_eq!(r["oracle"], 0.5);
}

#[test]
fn csv_is_a_flat_projection() {
    let path = scenario("ghz_sweep.json");
    let args = ["estimate", "--scenario", path.to_str().unwrap(), "--trials", "500"];
    let j = json(&run(&args));
    let out = run(&[&args[..], &["--format", "csv"]].concat());
    let mut rd = csv::Reader::from_reader(out.stdout.as_slice());
    let header: Vec<String> = rd.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header[..4], ["quantity", "mode", "theta", "mean"]);
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    let results = j["results"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(results.len(), 5);
    let mean_col = header.iter().position(|h| h == "mean").unwrap();
    for (row, r) in rows.iter().zip(results) {
        assert_eq!(row[mean_col].parse::<f64>().unwrap(), r["mean"].as_f64().unwrap());
    }
}

#[test]
fn session_csv_flattens_nested_fields() {
    let path = scenario("impersonation.json");
    let out = run(&["session", "--scenario", path.to_str().unwrap(), "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().next().unwrap();
    assert!(header.contains("verdict.verdict"));
    assert!(header.contains("prob_pass"));
}

#[test]
fn estimates_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = scenario("impersonation.json");
    let mut outputs = Vec::new();
    for i in 0..2 {
        let o = dir.path().join(format!("r{i}.json"));
        let out = run(&["estimate", "--scenario", path.to_str().unwrap(), "--seed", "42", "--trials", "3000", "--out", o.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
        outputs.push(std::fs::read(o).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let other = run(&["estimate", "--scenario", path.to_str().unwrap(), "--seed", "43", "--trials", "3000"]);
    assert_ne!(other.stdout, outputs[0]);
}

#[test]
fn sweep_rows_follow_the_grid() {
    let path = scenario("fixed_angle_sweep.json");
    let v = json(&run(&["estimate", "--scenario", path.to_str().unwrap(), "--trials", "2000"]));
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["mean"], 1.0);
    assert!((rows[4]["mean"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(rows.iter().all(|r| r["z"].as_f64().unwrap().abs() < 4.0));
}

fn reflection(theta: f64) -> Gate1 {
    let (s, c) = theta.sin_cos();
    Gate1::new(C64::new(c, 0.0), C64::new(s, 0.0), C64::new(s, 0.0), C64::new(c, 0.0))
}

#[test]
fn wrong_rotation_sign_is_caught() {
    let good = reproduce_paper(&PaperOptions { trials: Some(300), ..Default::default() }).unwrap();
    let bad = reproduce_paper(&PaperOptions { trials: Some(300), rotation: reflection, ..Default::default() }).unwrap();
    let find = |rows: &[epr_auth::cli::CheckRow], id: &str| rows.iter().find(|r| r.id == id).unwrap().clone();
    assert!(find(&good, "1.rotation").pass);
    assert!(!find(&bad, "1.rotation").pass);
}

#[test]
fn reproduce_paper_reports_every_claim() {
    let out = run(&["reproduce-paper", "--trials", "500"]);
    let v = json(&out);
    let rows = v["results"].as_array().unwrap();
    let ids: Vec<&str> = rows.iter().map(|r| r["id"].as_str().unwrap()).collect();
    for id in ["1", "2.pass_rate", "3.exact", "4.state", "5.key_steal", "6", "7", "8", "9"] {
        assert!(ids.contains(&id), "{id}");
    }
    let six = rows.iter().find(|r| r["id"] == "6").unwrap();
    assert_eq!(six["detail"], "|cosθ|=0.894427, P=0.900000");
    assert_eq!(six["pass"], true);
    let all = rows.iter().filter(|r| r["diagnostic"] == false).all(|r| r["pass"] == true);
    assert_eq!(out.status.code(), Some(if all { 0 } else { 1 }));
}
