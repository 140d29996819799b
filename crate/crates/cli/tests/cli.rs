use std::process::{Command, Output};

use serde_json::Value;

fn qsc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsc")).args(args).env_remove("QSC_ORACLE_CAP").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn counts(v: &Value) -> (usize, usize) {
    (v["generators"].as_array().unwrap().len(), v["relations"].as_array().unwrap().len())
}

#[test]
fn present_counts() {
    let o = qsc(&["present", "-n", "3", "-J", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(counts(&v), (2, 1));
    assert_eq!(v["relations"][0]["case"], "Q_COMMUTE");

    let o = qsc(&["present", "-n", "2", "-J", "1", "--format", "json"]);
    assert_eq!(counts(&json(&o)), (1, 0));

    let o = qsc(&["present", "-n", "7", "-J", "2,5,6", "--format", "json"]);
    let gens: Vec<(u64, u64)> = json(&o)["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| (g[0].as_u64().unwrap(), g[1].as_u64().unwrap()))
        .collect();
    let expect = [
        (6, 7), (5, 7), (5, 6), (4, 7), (4, 6), (3, 7), (3, 6), (2, 7), (2, 6),
        (2, 3), (2, 4), (2, 5), (1, 7), (1, 6), (1, 3), (1, 4), (1, 5),
    ];
    assert_eq!(gens, expect);
}

#[test]
fn present_text_has_classical_echo() {
    let o = qsc(&["present", "-n", "4", "-J", "2"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("4 generators"));
    let (_, echo) = text.split_once("at q = 1").unwrap();
    let lines: Vec<&str> = echo.lines().skip(1).filter(|l| !l.is_empty()).collect();
    assert!(!lines.is_empty());
    for l in lines {
        assert!(!l.contains('q'), "{l}");
        // every relation becomes a commutation: ab = ba
        let (lhs, rhs) = l.trim().split_once(" = ").unwrap();
        let (a, b) = lhs.split_once('*').unwrap();
        assert_eq!(rhs, format!("{b}*{a}"), "{l}");
    }
}

#[test]
fn invalid_input_is_a_usage_error() {
    assert_eq!(code(&qsc(&["present", "-n", "3", "-J", "5"])), 2);
    assert_eq!(code(&qsc(&["present", "-n", "1"])), 2);
    assert_eq!(code(&qsc(&["verify", "-n", "3", "-J", "a"])), 2);
    assert_eq!(code(&qsc(&["verify", "-n", "3", "--suites", "nope"])), 2);
    assert_eq!(code(&qsc(&["verify", "-n", "3", "--oracle-cap", "0"])), 2);
    let o = qsc(&["present", "-n", "3", "-J", "2", "--out", "/nonexistent/dir/x.txt"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent/dir/x.txt"));
}

#[test]
fn verify_examples_pass() {
    let o = qsc(&["verify", "-n", "4", "-J", "2", "--suites", "theorem", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["summary"]["pass"].as_u64().unwrap() > 0);
    assert_eq!(code(&qsc(&["verify", "-n", "3", "-J", "2", "--suites", "lemmas,iso"])), 0);
    assert_eq!(code(&qsc(&["verify", "-n", "3", "-J", "1,2", "--strict"])), 0);
}

#[test]
fn budget_skips_are_strict_failures() {
    let args = ["verify", "-n", "5", "-J", "2", "--suites", "coinv", "--oracle-cap", "10"];
    assert_eq!(code(&qsc(&args)), 0);
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(code(&qsc(&strict)), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_qsc"))
        .args(["verify", "-n", "5", "-J", "2", "--suites", "coinv", "--strict", "--format", "json"])
        .env("QSC_ORACLE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["oracle_cap"], 10);
}

#[test]
fn large_n_with_tiny_cap_is_strict_skip() {
    let o = qsc(&["verify", "-n", "9", "-J", "4", "--oracle-cap", "10", "--strict", "--format", "json", "--out", "/dev/null"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn exports_are_deterministic() {
    let dir = std::env::temp_dir().join(format!("qsc-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for what in ["presentation", "rootvectors", "report"] {
        let a = dir.join(format!("{what}-a.json"));
        let b = dir.join(format!("{what}-b.json"));
        let a_s = a.to_str().unwrap();
        let b_s = b.to_str().unwrap();
        assert_eq!(code(&qsc(&["export", what, "-n", "3", "-J", "2", "--out", a_s])), 0);
        assert_eq!(code(&qsc(&["export", what, "-n", "3", "-J", "2", "--parallelism", "1", "--out", b_s])), 0);
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap(), "{what}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn export_rootvectors_n3() {
    let o = qsc(&["export", "rootvectors", "-n", "3", "-J", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let rv = v["rootvectors"].as_array().unwrap();
    assert_eq!(rv.len(), 2);
    assert_eq!(rv[0]["root"], serde_json::json!([2, 3]));
    assert_eq!(rv[0]["terms"], serde_json::json!([{"word": [2], "coeff": "1"}]));
    // T_2(E_1) = E_2 E_1 - q^{-1} E_1 E_2
    assert_eq!(rv[1]["root"], serde_json::json!([1, 3]));
    assert_eq!(
        rv[1]["terms"],
        serde_json::json!([{"word": [1, 2], "coeff": "-q^-1"}, {"word": [2, 1], "coeff": "1"}])
    );
}

#[test]
fn minimal_presentation_export() {
    let o = qsc(&["export", "presentation", "-n", "2", "-J", "1"]);
    let v = json(&o);
    assert_eq!(v["n"], 2);
    assert_eq!(v["generators"], serde_json::json!([[1, 2]]));
    assert_eq!(v["relations"], serde_json::json!([]));
}
