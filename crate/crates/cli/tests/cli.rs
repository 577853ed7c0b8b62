//! End-to-end runs of the `latentbr` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const SCENARIOS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/scenarios");

fn latentbr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latentbr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn scenario(name: &str) -> String {
    Path::new(SCENARIOS).join(name).display().to_string()
}

#[test]
fn run_game_prints_trace_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("game.json");
    let out = latentbr(&["run", &scenario("game.scn"), "--trace", "--json", json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let text = stdout(&out);
    assert!(text.contains("triggered: [p4 & p5](p3, p10)"));
    assert!(text.contains("members: p1 p2 p3 p4 p5 p6 p7 p8 p9 p10"));

    let report: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["schema"], 1);
    assert_eq!(report["inconsistent"], false);
    assert_eq!(report["trace"].as_array().unwrap().len(), 4);
    assert!(report["members"]
        .as_array()
        .unwrap()
        .iter()
        .any(|m| m == "p10"));
}

#[test]
fn run_dropped_key_keeps_p3_latent() {
    let out = latentbr(&["run", &scenario("dropped_key.scn")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let members = text.lines().find(|l| l.starts_with("members:")).unwrap();
    assert!(!members.split_whitespace().any(|m| m == "p3" || m == "p1"));
    assert!(text.contains("latent:\n  [p4 & p5](p3, p10)"));
}

#[test]
fn invalid_scenario_exits_2_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.scn");
    fs::write(&bad, "atoms p q\nitem a essence p\nevent revise b\n").unwrap();
    let out = latentbr(&["run", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn missing_file_exits_2() {
    let out = latentbr(&["run", "/nonexistent/scenario.scn"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = latentbr(&["check", "--seeds", "20", "--atoms", "3", "--report", report.to_str().unwrap()]);
    // Exit 0 or 1 depending on whether a postulate failed on these seeds.
    assert!(matches!(out.status.code(), Some(0 | 1)));
    assert!(stdout(&out).contains("identity.contract_then_expand"));
    let json: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["instances"], 20);
    assert!(json["postulates"]["representation.partial_meet"]["checked"].as_u64().unwrap() > 0);
}

#[test]
fn witnesses_are_runnable_scenarios() {
    let dir = tempfile::tempdir().unwrap();
    let out = latentbr(&["witnesses", "--budget", "2000", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    for name in ["no_gratuitous_recovery", "no_levi_identity", "no_consistency"] {
        let file = dir.path().join(format!("{name}.scn"));
        assert!(file.exists(), "{name} not written");
        let run = latentbr(&["run", file.to_str().unwrap()]);
        assert_eq!(run.status.code(), Some(0), "{name} does not run");
    }
    let consistency = latentbr(&["run", dir.path().join("no_consistency.scn").to_str().unwrap()]);
    assert!(stdout(&consistency).starts_with("inconsistent"));
}

#[test]
fn atoms_out_of_range_is_rejected() {
    let out = latentbr(&["check", "--atoms", "9"]);
    assert_eq!(out.status.code(), Some(2));
}
