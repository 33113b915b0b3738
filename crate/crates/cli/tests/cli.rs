use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

const A2: &str = r#"{"vertices":["1","2"],"arrows":[{"id":"a","source":"1","target":"2"}]}"#;
const A3: &str = r#"{"vertices":["1","2","3"],"arrows":[{"id":"a","source":"1","target":"2"},{"id":"b","source":"3","target":"2"}]}"#;
const KRONECKER: &str =
    r#"{"vertices":["1","2"],"arrows":[{"id":"a","source":"1","target":"2"},{"id":"b","source":"1","target":"2"}]}"#;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gentle-silt"));
    c.env_remove("GENTLE_SILT_JOBS");
    c
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&Path], extra: &[&str]) -> Output {
    let mut c = bin();
    for a in args {
        c.arg(a);
    }
    c.args(extra).output().unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn verify_a2_passes() {
    let dir = TempDir::new().unwrap();
    let alg = write(&dir, "a2.json", A2);
    let out = dir.path().join("report.json");
    let dot = dir.path().join("graph.dot");
    let o = bin().arg("verify").arg(&alg).arg("--out").arg(&out).arg("--dot").arg(&dot).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["count"], 5);
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["max_gldim_linear"], 1);
    assert!(fs::read_to_string(&dot).unwrap().starts_with("graph"));
}

#[test]
fn exhaustive_over_kronecker_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let alg = write(&dir, "k.json", KRONECKER);
    let o = bin().arg("enumerate").arg(&alg).args(["--mode", "exhaustive"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = bin().arg("enumerate").arg(&alg).args(["--mode", "depth:2"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["mode"], json!({"kind": "mutation_depth", "depth": 2, "string_bound": 12}));
}

#[test]
fn schema_errors_carry_a_json_pointer() {
    let dir = TempDir::new().unwrap();
    let alg = write(&dir, "bad.json", r#"{"vertices":["1","2"],"arrows":[{"id":"a","source":1,"target":"2"}]}"#);
    let o = run(&[Path::new("check"), &alg], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/arrows/0/source"));
    let o = run(&[Path::new("check"), &dir.path().join("missing.json")], &[]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn check_reports_violations() {
    let dir = TempDir::new().unwrap();
    let alg = write(
        &dir,
        "v.json",
        r#"{"vertices":["1","2","3","4"],"arrows":[{"id":"a","source":"1","target":"2"},{"id":"b","source":"2","target":"3"},{"id":"c","source":"2","target":"4"}]}"#,
    );
    let o = run(&[Path::new("check"), &alg], &[]);
    assert_eq!(o.status.code(), Some(2));
    let r = json_of(&o);
    assert_eq!(r["gentle"], false);
    assert!(!r["violations"].as_array().unwrap().is_empty());
}

#[test]
fn embed_simple_top() {
    let dir = TempDir::new().unwrap();
    let alg = write(&dir, "a2.json", A2);
    let curve = write(
        &dir,
        "s1.json",
        r#"{"start":{"kind":"marked","point":"o2"},"crossings":["1"],"end":{"kind":"extra","point":"o0"}}"#,
    );
    let o = run(&[Path::new("embed"), &alg, &curve], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o), json!({"P1": ["2"], "P0": ["1"], "d": [[[{"path": ["a"], "coef": 1}]]]}));
}

#[test]
fn surface_round_trips_through_check() {
    let dir = TempDir::new().unwrap();
    let alg = write(&dir, "a3.json", A3);
    let o = run(&[Path::new("surface"), &alg], &[]);
    assert_eq!(o.status.code(), Some(0));
    let s = json_of(&o);
    assert_eq!(s["topology"]["kind"], "disk");
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let alg = write(&dir, "a3.json", A3);
    let a = run(&[Path::new("verify"), &alg], &[]);
    let b = run(&[Path::new("verify"), &alg], &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&[Path::new("verify"), &alg], &["--jobs", "2"]);
    assert_eq!(a.stdout, c.stdout);
    let d = bin().env("GENTLE_SILT_JOBS", "3").arg("verify").arg(&alg).output().unwrap();
    assert_eq!(a.stdout, d.stdout);
}

#[test]
fn classify_and_export_dot() {
    let dir = TempDir::new().unwrap();
    let alg = write(&dir, "a3.json", A3);
    let report = dir.path().join("r.json");
    let o = bin().arg("verify").arg(&alg).arg("--out").arg(&report).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = run(&[Path::new("classify"), &report], &[]);
    let table = String::from_utf8(o.stdout).unwrap();
    assert_eq!(table.lines().count(), 15);
    assert!(table.lines().nth(1).unwrap().trim_start().starts_with('0'));
    let o = run(&[Path::new("export-dot"), &report], &["--endo", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("digraph"));
    let o = run(&[Path::new("export-dot"), &alg], &[]);
    assert!(String::from_utf8(o.stdout).unwrap().contains("\"1\" -> \"2\""));
    let o = run(&[Path::new("export-dot"), &report], &["--endo", "99"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tilde_defaults_to_bounded_mutation() {
    let dir = TempDir::new().unwrap();
    let alg = write(&dir, "k.json", KRONECKER);
    let o = run(&[Path::new("verify"), &alg], &[]);
    assert_eq!(o.status.code(), Some(0));
    let r = json_of(&o);
    assert_eq!(r["mode"]["depth"], 8);
    assert_eq!(r["algebra_id"], "Ã1,1");
}
