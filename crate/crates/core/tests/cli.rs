//! End-to-end checks of the command-line surface: exit codes, file
//! formats, and determinism of exported artifacts.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_d6spin"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn diag1_json() -> String {
    r#"{"level":1,"b":[[1,0,0,0,0,0],[1,0,0,0,0,0],[1,0,0,0,0,0],[1,0,0,0,0,0],[1,0,0,0,0,0],[1,0,0,0,0,0]]}"#
        .to_owned()
}

#[test]
fn validate_accepts_and_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.json", &diag1_json());
    let out = run(&["validate", "--level", "1", "--in", good.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "ok");

    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"level":1,"b":[[-1,0,0,0,0,0],[0,0,0,0,0,0],[0,0,0,0,0,0],[0,0,0,0,0,0],[0,0,0,0,0,0],[0,0,0,0,0,0]]}"#,
    );
    let out = run(&["validate", "--level", "1", "--in", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("nonnegativity(1,1)"), "stderr was: {err}");
    assert!(err.contains("row-sum(1)"));
}

#[test]
fn apply_word_round_trip_and_kill() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "diag.json", &diag1_json());
    let path = input.to_str().unwrap();

    let out = run(&["apply", "--level", "1", "--word", "f6,e6", "--in", path]);
    assert!(out.status.success());
    let round: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(round["b"][0][0], 1);

    let out = run(&["apply", "--level", "1", "--word", "f1", "--in", path]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout(&out).trim(), "none");
}

#[test]
fn stats_of_the_diagonal() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "diag.json", &diag1_json());
    let out = run(&["stats", "--level", "1", "--in", input.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["eps"], serde_json::json!([1, 0, 0, 0, 0, 0, 0]));
    assert_eq!(v["phi"], serde_json::json!([0, 0, 0, 0, 0, 0, 1]));
    assert_eq!(v["wt"], serde_json::json!([-1, 0, 0, 0, 0, 0, 1]));
}

#[test]
fn enumerate_writes_deterministic_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let dot1 = dir.path().join("a.dot");
    let json1 = dir.path().join("a.json");
    let out = run(&[
        "enumerate", "--level", "1",
        "--dot", dot1.to_str().unwrap(),
        "--json", json1.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("32 elements"));
    let elements: Vec<serde_json::Value> =
        serde_json::from_str(&fs::read_to_string(&json1).unwrap()).unwrap();
    assert_eq!(elements.len(), 32);

    let dot2 = dir.path().join("b.dot");
    let out = run(&["enumerate", "--level", "1", "--dot", dot2.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(
        fs::read(&dot1).unwrap(),
        fs::read(&dot2).unwrap(),
        "dot export must be byte-identical across runs"
    );
}

#[test]
fn minimal_listing() {
    let out = run(&["minimal", "--level", "1"]);
    assert!(out.status.success());
    let v: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v.len(), 4);
    assert!(v.iter().all(|e| e["a"].as_array().unwrap().len() == 7));
}

#[test]
fn embed_then_decompose_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let b0 = write(dir.path(), "b0.json", &diag1_json());
    // Lower the diagonal once at node 6 to get a non-minimal element.
    let lowered = run(&["apply", "--level", "1", "--word", "f6", "--in", b0.to_str().unwrap()]);
    assert!(lowered.status.success());
    let b = write(dir.path(), "b.json", &stdout(&lowered));

    let out = run(&[
        "embed", "--level", "1",
        "--b0", b0.to_str().unwrap(),
        "--in", b.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let image = write(dir.path(), "image.json", &stdout(&out));

    let out = run(&["decompose", "--in", image.to_str().unwrap()]);
    assert!(out.status.success());
    let d: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(d["l"], 1);
    assert_eq!(d["a"].as_array().unwrap().len(), 7);
    // Row sums of b0 must equal the recovered level.
    let b0_rows = d["b0"].as_array().unwrap();
    let sum: i64 = b0_rows[0].as_array().unwrap().iter().map(|v| v.as_i64().unwrap()).sum();
    assert_eq!(sum, 1);
}

#[test]
fn omega_round_trip_via_files() {
    let dir = tempfile::tempdir().unwrap();
    let zero = write(
        dir.path(),
        "zero.json",
        r#"{"level":"inf","b":[[0,0,0,0,0,0],[0,0,0,0,0,0],[0,0,0,0,0,0],[0,0,0,0,0,0],[0,0,0,0,0,0],[0,0,0,0,0,0]]}"#,
    );
    let lowered = run(&["apply", "--level", "inf", "--word", "f0", "--in", zero.to_str().unwrap()]);
    assert!(lowered.status.success());
    let b = write(dir.path(), "b.json", &stdout(&lowered));

    let out = run(&["omega", "--in", b.to_str().unwrap()]);
    assert!(out.status.success());
    let point: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(point["names"][0], "x6_3");
    let p = write(dir.path(), "p.json", &stdout(&out));

    let out = run(&["omega-inv", "--in", p.to_str().unwrap()]);
    assert!(out.status.success());
    let back: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let original: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&b).unwrap()).unwrap();
    assert_eq!(back["b"], original["b"]);
}

#[test]
fn ud_apply_accepts_bare_and_named_points() {
    let dir = tempfile::tempdir().unwrap();
    let bare = write(dir.path(), "p.json", "[0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]");
    let out = run(&["ud-apply", "--k", "1", "--c", "3", "--in", bare.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["x"][10], 3);

    let named = write(dir.path(), "q.json", &stdout(&out));
    let out = run(&["ud-apply", "--k", "1", "--c", "-3", "--in", named.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["x"], serde_json::json!(vec![0; 15]));
}

#[test]
fn trop_eval_and_equiv() {
    let dir = tempfile::tempdir().unwrap();
    let e1 = write(dir.path(), "e1.txt", "x*y/z + w");
    let assign = write(dir.path(), "a.json", r#"{"x":1,"y":2,"z":0,"w":5}"#);
    let out = run(&[
        "trop", "eval",
        "--expr", e1.to_str().unwrap(),
        "--assign", assign.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("max(((x + y) - z), w)"));
    assert!(text.trim_end().ends_with('5'));

    let e2 = write(dir.path(), "e2.txt", "w + x*y/z");
    let out = run(&[
        "trop", "equiv",
        "--expr", e1.to_str().unwrap(),
        "--expr2", e2.to_str().unwrap(),
        "--box", "20", "--trials", "500", "--seed", "1",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "equal");

    let e3 = write(dir.path(), "e3.txt", "x + 2");
    let out = run(&[
        "trop", "equiv",
        "--expr", e1.to_str().unwrap(),
        "--expr2", e3.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("counterexample"));
}

#[test]
fn verify_suite_runs_clean() {
    let out = run(&["verify", "--suite", "coherent", "--seed", "0"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().all(|line| line.starts_with("PASS")));
}
