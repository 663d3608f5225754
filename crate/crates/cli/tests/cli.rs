use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn symtensor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symtensor")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn repo_path(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel).display().to_string()
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("symtensor-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn dimension_of_quadric_from_file() {
    let model = repo_path("models/quadric-surface.json");
    let v = json_of(&symtensor(&["dimension", "--model", &model, "--m", "2", "--k", "2", "--seed", "7"]));
    assert_eq!(v["dimension"], 1);
    assert_eq!(v["status"], "stable");
    assert_eq!(v["runs"].as_array().unwrap().len(), 3);
    assert_eq!(v["regime"], "complete");
}

#[test]
fn dimension_with_negative_twist_is_zero() {
    let v = json_of(&symtensor(&["dimension", "--model", "builtin:cubic-surface", "--m", "2", "--k", "-1"]));
    assert_eq!(v["dimension"], 0);
    assert_eq!(v["ncols"], 0);
}

#[test]
fn trisecant_reports_fixpoint_and_threshold() {
    let v = json_of(&symtensor(&["trisecant", "--model", "builtin:quadric-surface", "--prime", "11", "--threshold", "0.5"]));
    assert_eq!(v["fixpoint_at"], 1);
    assert_eq!(v["meets_threshold"], false);
    assert_eq!(v["universe"], 1464);
}

#[test]
fn zak_on_veronese() {
    let v = json_of(&symtensor(&["zak", "--model", "builtin:veronese-surface", "--prime", "7", "--trials", "20", "--seed", "2"]));
    assert_eq!(v["trials"], 20);
    assert_eq!(v["extension_failures"], 0);
}

#[test]
fn envelope_of_twisted_cubic() {
    let v = json_of(&symtensor(&["envelope", "--model", "builtin:twisted-cubic", "--prime", "7"]));
    assert_eq!(v["dimension"], 3);
    assert_eq!(v["quadrics"].as_array().unwrap().len(), 3);
}

#[test]
fn plurigenera_formats() {
    let v = json_of(&symtensor(&["plurigenera", "--mmax", "6"]));
    let diffs: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["difference"].as_u64().unwrap()).collect();
    assert_eq!(diffs, vec![0, 4, 5]);
    let out = symtensor(&["plurigenera", "--mmax", "4", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(!symtensor(&["plurigenera", "--mmax", "1"]).status.success());
}

#[test]
fn errors_exit_with_code_two() {
    let out = symtensor(&["dimension", "--model", "no-such-model.json", "--m", "2", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no-such-model.json"));
    let out = symtensor(&["dimension", "--model", "builtin:quadric-surface", "--m", "2", "--k", "2", "--prime", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn suite_writes_sorted_report() {
    let dir = scratch_dir("suite");
    std::fs::write(
        dir.join("b.json"),
        r#"{"name":"b-jump","operation":"plurigenera","params":{"mmax":8},"expectation":{"kind":"bound","min":1}}"#,
    )
    .unwrap();
    std::fs::write(
        dir.join("a.json"),
        r#"{"name":"a-envelope","model":"builtin:conic","operation":"envelope","params":{"primes":[5]},"expectation":{"kind":"exact","value":2}}"#,
    )
    .unwrap();
    std::fs::write(dir.join("notes.txt"), "ignored").unwrap();
    let out_path = dir.join("report.json");
    let out = symtensor(&["suite", "--dir", dir.to_str().unwrap(), "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let names: Vec<&str> = report["scenarios"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["a-envelope", "b-jump"]);
    assert_eq!(report["passed"], 1, "the conic lies on exactly one quadric");
    assert_eq!(report["failed"], 1);
    let strict = symtensor(&["suite", "--dir", dir.to_str().unwrap(), "--out", out_path.to_str().unwrap(), "--strict"]);
    assert_eq!(strict.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}
