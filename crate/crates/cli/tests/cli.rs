//! Runs the built binary end to end.

use std::path::Path;
use std::process::{Command, Output};

use quandlekit::json::{self, QuandleRef, QuandleRepJson, TableRowJson};
use quandlekit::{
    conj_quandle, decompose_irreps, group_from_family, group_rep_as_quandle_rep, CohomologyReport,
    Family, Tolerances,
};
use serde_json::Value;

fn quandlekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quandlekit"))
        .args(args)
        .env_remove("QUANDLEKIT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn classify_conj_quaternion_eight() {
    let o = quandlekit(&["classify", "--conj", "quaternion:2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = json::report_from_json(&stdout(&o)).unwrap();
    assert_eq!(r.base_reps.len(), 5);
    assert_eq!(r.m_q_order, 2);
    assert_eq!(r.mode, "conj_schur_cover");
    assert!(!r.m_q_is_lower_bound);
    assert_eq!(r.seed, 0);
}

#[test]
fn check_reports_idempotence_witness() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "q.json",
        r#"{"size": 2, "table": [[0, 1], [1, 0]]}"#,
    );
    let o = quandlekit(&["check", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stdout(&o).contains("idempotence fails at x=1"),
        "{}",
        stdout(&o)
    );

    let o = quandlekit(&["check", &f, "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(v["axiom"], "idempotence");
    assert_eq!(v["witness"], serde_json::json!([1, 1, 1]));
}

#[test]
fn check_accepts_valid_tables() {
    let dir = tempfile::tempdir().unwrap();
    // dihedral quandle of order 3: x ▷ y = 2x - y mod 3
    let f = write(
        dir.path(),
        "r3.json",
        r#"{"size": 3, "table": [[0, 2, 1], [2, 1, 0], [1, 0, 2]]}"#,
    );
    let o = quandlekit(&["check", &f]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("valid quandle of size 3"));
}

#[test]
fn h2_of_dihedral_three() {
    let o = quandlekit(&["h2", "dihedral:3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("H2(G, C^x): trivial"), "{}", stdout(&o));

    let o = quandlekit(&["h2", "dihedral:4", "--format", "json"]);
    let r: CohomologyReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.invariant_factors_cx, vec![2]);
}

#[test]
fn unknown_verb_is_a_usage_error() {
    let o = quandlekit(&["bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("valid verbs: check, info, h2, irreps, classify, cocycle-class, table")
    );
}

#[test]
fn malformed_json_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "bad.json",
        "{\"size\": 2,\n  \"table\": [[0, 1]\n",
    );
    let o = quandlekit(&["info", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn table_is_byte_identical_across_runs() {
    let a = quandlekit(&["table", "--n", "2,3"]);
    let b = quandlekit(&["table", "--n", "2,3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(2)
        .map(|l| l.split_whitespace().collect())
        .collect();
    let expected = [
        ["Conj(Q_8)", "D_4", "Z/2", "Z/2", "Z/2"],
        ["Conj(D_8)", "D_4", "Z/2", "Z/2", "Z/2"],
        ["Conj(Q_12)", "D_6", "0", "0", "0"],
        ["Conj(D_6)", "D_6", "0", "0", "0"],
        ["Conj(D_12)", "D_6", "0", "0", "0"],
    ];
    assert_eq!(rows.len(), expected.len(), "{text}");
    for (row, want) in rows.iter().zip(expected) {
        assert_eq!(&row[..5], &want[..]);
    }

    let j1 = quandlekit(&["table", "--n", "2,3", "--format", "json"]);
    let j2 = quandlekit(&["table", "--n", "2,3", "--format", "json"]);
    assert_eq!(j1.stdout, j2.stdout);
    let v: Value = serde_json::from_str(&stdout(&j1)).unwrap();
    let rows: Vec<TableRowJson> = serde_json::from_value(v["rows"].clone()).unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0].m_q, vec![2]);
}

#[test]
fn seed_comes_from_flag_then_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_quandlekit"))
        .args(["irreps", "symmetric:3"])
        .env("QUANDLEKIT_SEED", "41")
        .output()
        .unwrap();
    assert!(stdout(&o).starts_with("# quandlekit seed 41\n"));
    let o = quandlekit(&["irreps", "symmetric:3", "--seed", "5", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["seed"], 5);
    assert_eq!(v["dimensions"], serde_json::json!([1, 1, 2]));
}

#[test]
fn json_reports_are_deterministic() {
    for args in [
        ["info", "symmetric:3"],
        ["irreps", "quaternion:2"],
        ["classify", "dihedral:3"],
    ] {
        let mut with_json = args.to_vec();
        with_json.extend(["--format", "json"]);
        let a = quandlekit(&with_json);
        let b = quandlekit(&with_json);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout);
        serde_json::from_str::<Value>(&stdout(&a)).unwrap();
    }
}

#[test]
fn info_on_group_families_uses_conjugation() {
    let o = quandlekit(&["info", "klein", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["size"], 4);
    assert_eq!(v["orbits"].as_array().unwrap().len(), 4);
    assert_eq!(v["inn_order"], 1);
}

#[test]
fn classify_via_inn_on_a_quandle_file() {
    let dir = tempfile::tempdir().unwrap();
    let q = conj_quandle(&group_from_family(Family::Symmetric, 3).unwrap());
    let f = write(dir.path(), "s3.json", &json::quandle_to_json(&q));
    let o = quandlekit(&["classify", &f, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = json::report_from_json(&stdout(&o)).unwrap();
    assert_eq!(r.mode, "inn_trivial_multiplier");
    let mut dims: Vec<usize> = r.base_reps.iter().map(|b| b.dim).collect();
    dims.sort_unstable();
    assert_eq!(dims, vec![1, 1, 2]);
}

#[test]
fn classify_reports_hypothesis_obstructions() {
    let o = quandlekit(&["classify", "--conj", "dihedral:6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("hypothesis violated"), "{}", stderr(&o));
    // the Inn(Q) route refuses Conj(Q_8) because Inn is Klein with multiplier Z/2
    let o = quandlekit(&["classify", "quaternion:2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("Z/2"), "{}", stderr(&o));
}

#[test]
fn lower_bound_survey_of_symmetric_four() {
    let o = quandlekit(&[
        "classify",
        "--lower-bound",
        "symmetric:4",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = json::report_from_json(&stdout(&o)).unwrap();
    assert!(r.m_q_is_lower_bound);
    assert_eq!(r.h2_inn_cx, vec![2]);
    assert_eq!(r.m_q_order, 1);
    assert_eq!(r.assumptions.len(), 1);
}

fn quaternion_rep_file(dir: &Path, dim: usize) -> String {
    let tol = Tolerances::default();
    let g = group_from_family(Family::GeneralizedQuaternion, 2).unwrap();
    let rep = decompose_irreps(&g, 0, &tol)
        .unwrap()
        .into_iter()
        .find(|r| r.dim() == dim)
        .unwrap();
    let q = group_rep_as_quandle_rep(&rep, &tol).unwrap();
    let file = QuandleRepJson::from_rep(&q, QuandleRef::ConjFamily("quaternion:2".into()));
    write(
        dir,
        &format!("rep{dim}.json"),
        &serde_json::to_string(&file).unwrap(),
    )
}

#[test]
fn cocycle_class_of_quaternion_reps() {
    let dir = tempfile::tempdir().unwrap();
    let two = quaternion_rep_file(dir.path(), 2);
    let o = quandlekit(&["cocycle-class", &two, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["h2_inn_Cx"], serde_json::json!([2]));
    assert_eq!(v["class_coordinates"], serde_json::json!([1]));
    assert_eq!(v["trivial_over_Cx"], false);

    let one = quaternion_rep_file(dir.path(), 1);
    let o = quandlekit(&["cocycle-class", &one, "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["class_coordinates"], serde_json::json!([0]));
    assert_eq!(v["trivial_over_Cx"], true);
}

#[test]
fn cocycle_class_rejects_non_representations() {
    let dir = tempfile::tempdir().unwrap();
    // on the trivial quandle ρ(0) and ρ(1) must commute; these do not
    let text = r#"{"quandle": {"size": 2, "table": [[0, 1], [0, 1]]}, "dim": 2,
        "matrices": {"0": [[[1, 0], [1, 0]], [[0, 0], [1, 0]]], "1": [[[1, 0], [0, 0]], [[1, 0], [1, 0]]]}}"#;
    let f = write(dir.path(), "bad_rep.json", text);
    let o = quandlekit(&["cocycle-class", &f]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}
