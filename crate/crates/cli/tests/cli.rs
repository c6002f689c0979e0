//! The binary end to end: exit codes, diagnostics and report encoding.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vancoh")).args(args).output().expect("binary runs")
}

fn scratch(tag: &str) -> PathBuf {
    std::env::temp_dir().join(format!("vancoh-cli-{}-{tag}", std::process::id()))
}

/// Runs with `--json` and returns the exit code and the parsed report.
fn run_json(args: &[&str], tag: &str) -> (i32, Value) {
    let path = scratch(tag);
    let mut full: Vec<&str> = args.to_vec();
    let p = path.display().to_string();
    full.extend(["--json", &p]);
    let out = run(&full);
    let report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap_or_else(|_| "null".into())).unwrap();
    let _ = std::fs::remove_file(&path);
    (out.status.code().unwrap(), report)
}

fn task(tag: &str, body: &str) -> String {
    let path = scratch(tag);
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn verify_paper_passes() {
    let (code, r) = run_json(&["verify-paper"], "paper");
    assert_eq!(code, 0);
    assert_eq!(r["check"], "counterexample");
    assert_eq!(r["witnesses"]["dim_h1"], "2");
}

#[test]
fn h1_on_the_counterexample_file() {
    let (code, r) = run_json(&["h1", "--input", &data("counterexample.json")], "h1");
    assert_eq!(code, 0);
    let w = &r["witnesses"];
    assert_eq!((&w["dim_z1"], &w["dim_b1"], &w["dim_h1"]), (&"4".into(), &"2".into(), &"2".into()));
    assert_eq!(w["cocycle_class"], "nonzero");
}

#[test]
fn relator_violation_is_an_input_error() {
    let out = run(&["h1", "--input", &data("relator_violation.json")]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("representation.relators[0]"), "{}", stderr(&out));
}

#[test]
fn malformed_json_reports_line_and_field() {
    let path = task("bad.json", "{\n  \"lattice\": {\n    \"rank\": 2,\n    \"symmetry\": \"alternating\",\n    \"gram\": [[\"0\", \"1\"], [\"-1\", 0.5]]\n  }\n}\n");
    let out = run(&["check-vanishing-lattice", "--input", &path]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(out.status.code(), Some(3));
    let msg = stderr(&out);
    assert!(msg.contains("line 5"), "{msg}");
    assert!(msg.contains("lattice.gram"), "{msg}");
}

#[test]
fn missing_fields_and_flags_are_input_errors() {
    let path = task("empty.json", "{}");
    let out = run(&["certify-odd", "--input", &path]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("seeds"));
    assert_eq!(run(&["h1"]).status.code(), Some(3));
    assert_eq!(run(&["random-experiment"]).status.code(), Some(3));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(3));
    assert_eq!(run(&["frame", "--bounds", "depth=0"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn vanishing_lattice_frame_and_even_certificate_pass() {
    for cmd in ["check-vanishing-lattice", "frame", "certify-even"] {
        let (code, r) = run_json(&[cmd, "--input", &data("chain.json")], cmd);
        assert_eq!(code, 0, "{cmd}: {r}");
    }
}

#[test]
fn tight_bounds_are_inconclusive() {
    let (code, r) = run_json(&["frame", "--input", &data("chain.json"), "--bounds", "size=1"], "tight");
    assert_eq!(code, 2);
    assert_eq!(r["status"], "inconclusive");
}

#[test]
fn spsharp_member_and_level_two_failure() {
    let (code, r) = run_json(&["spsharp", "--input", &data("chain.json")], "sp1");
    assert_eq!(code, 0);
    assert_eq!(r["witnesses"]["certificate_verified"], true);
    // The same primitive transvection is not in the level-two subgroup.
    let text = std::fs::read_to_string(data("chain.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["level"] = "sp_sharp2".into();
    let path = task("sp2.json", &v.to_string());
    let (code, r) = run_json(&["spsharp", "--input", &path], "sp2");
    let _ = std::fs::remove_file(&path);
    assert_eq!(code, 1);
    assert!(r["failing_case"]["membership"]["obstruction"].is_object(), "{r}");
}

#[test]
fn odd_certificate_and_flag() {
    let (code, r) = run_json(&["certify-odd", "--input", &data("a2_roots.json")], "odd");
    assert_eq!(code, 0);
    assert_eq!(r["witnesses"]["outcome"], "coboundary");
    // φ(g₀) = (0, 1) is not in the image of g₀ − I = span(1, 0).
    let text = std::fs::read_to_string(data("a2_roots.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["cocycle"][0] = serde_json::json!(["0", "1"]);
    let path = task("flag.json", &v.to_string());
    let (code, r) = run_json(&["certify-odd", "--input", &path], "flag");
    let _ = std::fs::remove_file(&path);
    assert_eq!(code, 1);
    assert_eq!(r["witnesses"]["outcome"], "flagged");
}

#[test]
fn restrict_finds_no_nonzero_class_on_the_counterexample() {
    let (code, r) = run_json(&["restrict", "--input", &data("counterexample.json"), "--bounds", "wordlen=3"], "restrict");
    assert_eq!(code, 0);
    assert_eq!(r["witnesses"]["words_checked"], "53");
}

fn has_json_number(v: &Value) -> bool {
    match v {
        Value::Number(_) => true,
        Value::Array(a) => a.iter().any(has_json_number),
        Value::Object(o) => o.values().any(has_json_number),
        _ => false,
    }
}

#[test]
fn reports_carry_integers_as_strings() {
    let (_, r) = run_json(&["random-experiment", "--seed", "5", "--trials", "4"], "strings");
    assert!(!has_json_number(&r));
    assert_eq!(r["seed"], "5");
    let idx: Vec<&str> = r["witnesses"]["results"].as_array().unwrap().iter().map(|t| t["index"].as_str().unwrap()).collect();
    assert_eq!(idx, ["0", "1", "2", "3"]);
}

#[test]
fn different_seeds_give_different_trials() {
    let (_, a) = run_json(&["random-experiment", "--seed", "1", "--trials", "2", "--flavor", "odd"], "s1");
    let (_, b) = run_json(&["random-experiment", "--seed", "2", "--trials", "2", "--flavor", "odd"], "s2");
    assert_ne!(a["witnesses"]["results"], b["witnesses"]["results"]);
}
