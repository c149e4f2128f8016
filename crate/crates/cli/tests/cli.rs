use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use insertion_cli::{parse_scenarios, reproduce, run_scenarios, survey_rows, CliError, RunOptions, RunReport, CATALOG};
use serde_json::json;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_insertion"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn write(dir: &TempDir, name: &str, v: &serde_json::Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn evens() -> serde_json::Value {
    json!({"carrier": "Seq", "value": {"cycle": ["1", "0"]}})
}

fn scenario(id: &str, cond: &str, expect: &str) -> serde_json::Value {
    json!({
        "id": id,
        "model": "SeqXEndModel",
        "condition": cond,
        "instance": {"f": evens(), "g": evens()},
        "expect": expect,
    })
}

#[test]
fn survey_row_counts() {
    assert_eq!(survey_rows(1).unwrap().len(), 1);
    assert_eq!(survey_rows(2).unwrap().len(), 1 + 4);
    let rows = survey_rows(3).unwrap();
    assert_eq!(rows.iter().filter(|r| r.n == 3).count(), 29);
    assert!(rows.iter().all(|r| r.agreement));
    assert!(matches!(survey_rows(6), Err(CliError::Core(insertion_core::Error::BoundExceeded { .. }))));
}

#[test]
fn survey_writes_csv() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("survey.csv");
    let o = run(&["survey", "--max-size", "3", "--out", s(&out)]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,open_count,normal,insertion_always_feasible,agreement"));
    assert_eq!(lines.count(), 1 + 4 + 29);
    assert_eq!(code(&run(&["survey", "--max-size", "6"])), 2);
}

#[test]
fn evens_insertion_fails_as_expected() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "s.json", &json!({"scenarios": [scenario("evens", "N", "Fails")]}));
    let o = run(&["check", s(&p)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report: RunReport = serde_json::from_slice(&o.stdout).unwrap();
    assert!(report.all_match);
    let cert = report.entries[0].report.as_ref().unwrap().certificate.as_ref().unwrap();
    assert_eq!(cert.kind(), "NoConvergentInsertion");
}

#[test]
fn zero_denominator_is_an_input_error_with_pointer() {
    let dir = TempDir::new().unwrap();
    let mut sc = scenario("bad", "N", "Fails");
    sc["instance"]["g"]["value"]["cycle"][1] = json!("1/0");
    let p = write(&dir, "s.json", &json!({"scenarios": [sc]}));
    let o = run(&["check", s(&p)]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("/scenarios/0/instance/g/value/cycle/1"), "{err}");
    assert!(err.contains("zero denominator"), "{err}");
}

#[test]
fn unknown_verdict_against_holds_is_a_mismatch() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "s.json", &json!({"scenarios": [scenario("bs", "BS", "Holds")]}));
    let o = run(&["check", s(&p), "--depth", "4"]);
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bs: expected Holds, observed UnknownAtDepth(4)"), "{err}");
}

#[test]
fn schema_errors_name_their_location() {
    let mut unknown_model = scenario("a", "N", "Fails");
    unknown_model["model"] = json!("NoSuchModel");
    let e = parse_scenarios(&json!({"scenarios": [unknown_model]}).to_string()).unwrap_err();
    assert!(matches!(&e, CliError::Schema { pointer, .. } if pointer == "/scenarios/0/model"), "{e}");

    let mut extra = scenario("a", "N", "Fails");
    extra["colour"] = json!(1);
    let e = parse_scenarios(&json!({"scenarios": [extra]}).to_string()).unwrap_err();
    assert!(e.to_string().contains("colour"), "{e}");

    let dup = json!({"scenarios": [scenario("a", "N", "Fails"), scenario("a", "T", "Holds")]});
    let e = parse_scenarios(&dup.to_string()).unwrap_err();
    assert!(matches!(&e, CliError::Schema { pointer, .. } if pointer == "/scenarios/1/id"), "{e}");

    let mut both = scenario("a", "N", "Fails");
    both["operation"] = json!("harness");
    assert!(parse_scenarios(&json!({"scenarios": [both]}).to_string()).is_err());
}

#[test]
fn reports_are_ordered_by_id_and_deterministic() {
    let file = json!({"scenarios": [
        scenario("z-last", "N", "Fails"),
        {"id": "gen-x", "model": "SeqXEndModel", "condition": "SL"},
        {"id": "gen-y", "model": "SeqYEndModel", "condition": "N", "expect": "Holds", "seed": 3},
        {"id": "harness-x", "model": "SeqXEndModel", "operation": "harness", "count": 6, "expect": "Holds"},
        {"id": "harness-fin", "model": "FiniteFullModel", "operation": "harness", "count": 6, "expect": "Holds"},
        scenario("a-first", "T", "Holds"),
    ]});
    let parsed = parse_scenarios(&file.to_string()).unwrap();
    let opts = RunOptions { depth: 6, seed: 42 };
    let r1 = run_scenarios(&parsed, opts).unwrap();
    let ids: Vec<&str> = r1.entries.iter().map(|e| e.id.as_str()).collect();
    assert_eq!(ids, ["a-first", "gen-x", "gen-y", "harness-fin", "harness-x", "z-last"]);
    assert!(r1.all_match, "{:?}", r1.entries.iter().filter_map(|e| e.diff()).collect::<Vec<_>>());
    for _ in 0..3 {
        assert_eq!(run_scenarios(&parsed, opts).unwrap().to_json(), r1.to_json());
    }

    let dir = TempDir::new().unwrap();
    let p = write(&dir, "s.json", &file);
    let outs: Vec<Vec<u8>> = (0..2).map(|_| run(&["check", s(&p), "--seed", "42", "--depth", "6"]).stdout).collect();
    assert_eq!(outs[0], outs[1]);
    assert_eq!(outs[0], r1.to_json().into_bytes());
}

#[test]
fn every_catalog_example_reproduces() {
    for id in CATALOG {
        let e = reproduce(id, 8).unwrap();
        assert!(e.matches, "{id}: {:?}", e.notes);
        assert!(!e.certificates.is_empty(), "{id} has no certificate");
        assert_eq!(code(&run(&["reproduce", id])), 0, "{id}");
    }
}

#[test]
fn golden_details() {
    let gap = reproduce("radical-gap", 8).unwrap();
    assert_eq!(gap.certificates[0].kind(), "TailMembership");
    let rate = reproduce("dieudonne-rate", 8).unwrap();
    let insertion_core::certificate::Certificate::Iteration { trace } = &rate.certificates[0] else {
        panic!("expected an iteration trace")
    };
    assert_eq!(trace.a_seq.len(), 20);
}

#[test]
fn unknown_example_lists_the_catalog() {
    let o = run(&["reproduce", "nonexistent"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    for id in CATALOG {
        assert!(err.contains(id), "{err}");
    }
}

#[test]
fn replay_accepts_saved_reports_and_rejects_tampering() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("all.json");
    assert_eq!(code(&run(&["reproduce", "all", "--out", s(&out)])), 0);
    let o = run(&["replay", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let summary: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(summary["checked"].as_u64().unwrap() >= CATALOG.len() as u64);

    // Claim the evens bound has limsup 0: the recorded values no longer match.
    let mut report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let entry = report["entries"].as_array_mut().unwrap().iter_mut().find(|e| e["id"] == "chi-evens-no-insertion").unwrap();
    let cert = entry["certificates"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|c| c["kind"] == "NoConvergentInsertion")
        .unwrap();
    cert["limsup"] = json!("0");
    let bad = write(&dir, "bad.json", &report);
    let o = run(&["replay", s(&bad)]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("chi-evens-no-insertion"));

    let garbage = write(&dir, "garbage.json", &json!({"entries": 3}));
    assert_eq!(code(&run(&["replay", s(&garbage)])), 2);
}
