use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monocurve"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn analyze_sharp_instance_text() {
    let o = run(&["analyze", "--d", "12", "--set", "0,3-5,9-10,12"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let out = stdout(&o);
    assert!(out.contains("reg          3"), "{out}");
    assert!(out.contains("closed-form range [2, 3]"), "{out}");
}

#[test]
fn analyze_json_reports_invariants() {
    let o = run(&["analyze", "--a-seq", "0,1,3,4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["invariants"]["reg"], 2);
    assert_eq!(v["invariants"]["buchsbaum"], true);
    assert_eq!(v["invariants"]["cm"], false);
    assert_eq!(v["input"]["d"], 4);
}

#[test]
fn batch_preserves_input_order() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curves.txt");
    fs::write(
        &path,
        "# three curves\nd=12;set=0,3-5,9-10,12\n\nd=6;set=0-6\nd=4;set=0-1,3-4  # Macaulay\n",
    )
    .unwrap();
    let o = run(&[
        "analyze",
        "--batch",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let ds: Vec<u64> = stdout(&o)
        .lines()
        .map(|l| {
            serde_json::from_str::<Value>(l).unwrap()["input"]["d"]
                .as_u64()
                .unwrap()
        })
        .collect();
    assert_eq!(ds, vec![12, 6, 4]);
}

#[test]
fn invalid_input_exits_one() {
    for args in [
        &["analyze", "--d", "5", "--set", "1-5"][..],
        &["analyze", "--d", "5", "--set", "0,7"],
        &["analyze", "--d", "5", "--set", "0,x"],
        &["analyze"],
        &["analyze", "--frobnicate"],
        &["verify", "--suite", "nonsense"],
        &["sweep", "--family", "nonsense", "--d-max", "8"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn ineq_type_b_lists_verdicts() {
    let o = run(&["ineq", "--d", "11", "--set", "0,2-3,8-9,11"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let verdicts: Vec<bool> = out
        .lines()
        .filter(|l| l.ends_with("holds") || l.ends_with("VIOLATED"))
        .map(|l| l.ends_with("holds"))
        .collect();
    assert_eq!(
        verdicts,
        vec![false, true, true, true, true, false],
        "{out}"
    );
}

#[test]
fn ineq_type_a_and_inapplicable() {
    let o = run(&["ineq", "--d", "6", "--set", "0,2-3,5-6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["lines"].as_array().unwrap().len(), 3);

    let o = run(&["ineq", "--d", "6", "--set", "0-2,4-6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr)
        .contains("concrete system defined only for Type A r=2 / Type B r=3"));
}

#[test]
fn sweep_writes_one_record_per_instance() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.jsonl");
    let o = run(&[
        "sweep",
        "--family",
        "typeA_r2",
        "--d-max",
        "10",
        "--jobs",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = fs::read_to_string(&path).unwrap();
    let records: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(!records.is_empty());
    assert!(
        records
            .iter()
            .all(|r| r["passed"] == true && r["kind"] == "TypeA"),
        "{}",
        records[0]
    );
    assert!(stdout(&o).contains(&format!(
        "{} instances, {} passed, 0 failed",
        records.len(),
        records.len()
    )));
}

#[test]
fn sweep_rem_a_family_passes() {
    let o = run(&["sweep", "--family", "remA_family", "--d-max", "25"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn verify_lemmas_passes() {
    let o = run(&["verify", "--suite", "lemmas", "--d-max", "12"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("[PASS] sumset_lemmas"));
}

#[test]
fn verify_cover_reports_counterexamples() {
    let o = run(&[
        "verify", "--suite", "cover", "--d-max", "8", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let passed: Vec<(String, bool)> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            (
                c["id"].as_str().unwrap().to_string(),
                c["passed"].as_bool().unwrap(),
            )
        })
        .collect();
    assert_eq!(
        passed,
        vec![
            ("cover_lemma".into(), false),
            ("cover_lemma_tight".into(), true),
            ("cover_lemma_sufficiency".into(), true)
        ]
    );
}
