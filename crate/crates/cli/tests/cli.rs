use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stillman"))
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn strength_of_linear_form_is_infinite() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", r#"{"field": "F3", "vars": 2, "polys": ["x1 + x2"]}"#);
    let o = run(&["strength", "--input", f.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "strength: infinite\n");
}

#[test]
fn regseq_json_output() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "fs.json", r#"{"field": "QQ", "vars": 2, "polys": ["x1", "x2"]}"#);
    let o = run(&["regseq", "--input", f.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!({"regular": true, "method_agreement": true}));
}

#[test]
fn canonical_polynomial_format_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let body = r#"[{"field": {"kind": "PrimeField", "p": 5},
                    "vars": [{"name": "x", "degree": 1}, {"name": "y", "degree": 1}],
                    "terms": [{"coeff": "1", "exps": [1, 1]}]},
                   {"field": {"kind": "PrimeField", "p": 5},
                    "vars": [{"name": "x", "degree": 1}, {"name": "y", "degree": 1}],
                    "terms": [{"coeff": "2", "exps": [0, 2]}]}]"#;
    let f = write(dir.path(), "fs.json", body);
    let o = run(&["codim", "--input", f.to_str().unwrap()]);
    assert_eq!(stdout(&o), "codim: 1\n");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"field": "F3", "polys": ["x1"]}"#);
    let o = run(&["codim", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "input");

    let f = write(dir.path(), "f.json", r#"{"field": "F3", "vars": 3, "polys": ["x1*x2", "x1*x3"]}"#);
    let o = run(&["codim", "--input", f.to_str().unwrap(), "--budget-pairs", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "budget");

    let o = run(&["census", "--degrees", "2,2", "--field", "F2", "--n", "3", "--max-tuples", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        ["threshold", "--degrees", "2,2", "--field", "F2", "--n", "2", "--format", "json"].as_slice(),
        &["census", "--degrees", "2,2", "--field", "F3", "--n", "3", "--samples", "30", "--seed", "4", "--format", "csv"],
        &["pd-exp", "--degrees", "2,2", "--field", "F3", "--n", "3,4", "--samples", "10", "--seed", "9", "--format", "json"],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn output_file_and_golden_census() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("census.json");
    let o = run(&[
        "census", "--degrees", "2,2", "--field", "F2", "--n", "2", "--format", "json", "--quiet", "--output",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success() && o.stdout.is_empty() && o.stderr.is_empty());
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../reports/census_d2-2_F2_n2.json");
    assert_eq!(std::fs::read_to_string(out).unwrap(), std::fs::read_to_string(golden).unwrap());
}

#[test]
fn family_commands() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "fam.json", r#"{"field": "QQ", "vars": 2, "params": ["t"], "polys": ["x1", "x1 + t*x2"]}"#);
    let o = run(&["regular-locus", "--input", f.to_str().unwrap()]);
    assert_eq!(stdout(&o), "regular on D(t)\n");

    let f = write(dir.path(), "m.json", r#"{"field": "QQ", "vars": 1, "params": ["t"], "polys": ["x1^2"]}"#);
    let o = run(&["constant-betti", "--input", f.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["open"], "1");
    assert_eq!(v["method"], "traced-specialization");
}

#[test]
fn limit_commands() {
    let dir = tempfile::tempdir().unwrap();
    let body = r#"{"field": "QQ", "elements": [
        {"tail": {"c": "1", "d": 2}},
        {"tail": {"c": "1", "d": 2, "weight": "index"}}]}"#;
    let f = write(dir.path(), "lim.json", body);
    let o = run(&["truncate", "--input", f.to_str().unwrap(), "--max-n", "2"]);
    assert_eq!(stdout(&o), "x1^2 + x2^2\nx1^2 + 2*x2^2\n");
    let o = run(&["stabilize", "--input", f.to_str().unwrap(), "--max-n", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 2);
}

#[test]
fn betti_text_layout() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", r#"{"field": "F2", "vars": 3, "polys": ["x1*x2", "x1*x3"]}"#);
    let o = run(&["betti", "--input", f.to_str().unwrap()]);
    assert_eq!(stdout(&o), "       0 1 2\ntotal: 1 2 1\n    0: 1 . .\n    1: . 2 1\n");
    let m = write(
        dir.path(),
        "m.json",
        r#"{"field": "F2", "vars": 2, "matrix": {"target_twists": [0, 0], "columns": [["x1", "x2"]]}}"#,
    );
    let o = run(&["betti", "--input", m.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(stdout(&o), "i,0,1\n0,2,0\n1,0,1\n");
}
