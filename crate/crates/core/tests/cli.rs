//! The binary end to end: exit codes, report files, config files.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_luttinger-ff"))
        .args(args)
        .env("LUTTINGER_FF_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn body(v: &Value) -> Value {
    let mut v = v.clone();
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn single_state_formfactor() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ff.json");
    let out = bin(&["--json", path.to_str().unwrap(), "ff", "--a", "-0.5", "--state", "1;0"]);
    assert_eq!(code(&out), 0);
    let v = read_json(&path);
    assert_eq!(v["command"], "ff");
    assert_eq!(v["tables"][0]["rows"][0][2].as_f64(), Some(-0.5));
}

#[test]
fn pair_state_matches_exact_value() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ff.json");
    let out = bin(&["--json", path.to_str().unwrap(), "ff", "--a", "-0.5", "--state", "2,1;0,-1"]);
    assert_eq!(code(&out), 0);
    let f = read_json(&path)["tables"][0]["rows"][0][2].as_f64().unwrap();
    assert!((f + 1.0 / 64.0).abs() < 1e-15);
}

#[test]
fn level_with_oracle_passes() {
    let out = bin(&["ff", "--a", "0.8", "--level", "3", "--oracle"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&bin(&["params", "--delta", "1.5"])), 2);
    assert_eq!(code(&bin(&["params", "--delta", "0.5", "--lambda", "0.2"])), 2);
    assert_eq!(code(&bin(&["ff", "--a", "0.5", "--state", "1;1"])), 2);
    assert_eq!(code(&bin(&["no-such-command"])), 2);
    assert_eq!(code(&bin(&["xx-validate", "--length", "14", "--ed"])), 3);
    assert_eq!(code(&bin(&["--help"])), 0);
    assert_eq!(code(&bin(&["sumrule", "--a", "1.2", "--max-level", "10"])), 0);
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = bin(&["--json", p.to_str().unwrap(), "xx-validate", "--length", "64"]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    }
    let (va, vb) = (read_json(&a), read_json(&b));
    assert_eq!(body(&va), body(&vb));
    assert!(va["timing"].as_array().is_some_and(|t| !t.is_empty()));
}

#[test]
fn csv_tables_parse() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin(&["--csv", dir.path().to_str().unwrap(), "xx-validate", "--length", "10", "--ed"]);
    assert_eq!(code(&out), 0);
    let mut files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert!(!files.is_empty());
    for f in files {
        let name = f.file_name().unwrap().to_string_lossy().into_owned();
        assert!(name.starts_with("xx-validate_") && name.ends_with(".csv"), "{name}");
        let mut r = csv::Reader::from_path(&f).unwrap();
        let width = r.headers().unwrap().len();
        let rows: Vec<_> = r.records().map(|x| x.unwrap()).collect();
        assert!(!rows.is_empty(), "{name} has no rows");
        assert!(rows.iter().all(|row| row.len() == width));
    }
}

#[test]
fn config_file_sets_defaults_and_command_line_wins() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# sum rule run\na = 0.3\nmax_level = 4\n").unwrap();
    let path = dir.path().join("s.json");
    let out = bin(&["--config", cfg.to_str().unwrap(), "--json", path.to_str().unwrap(), "sumrule"]);
    assert_eq!(code(&out), 0);
    let v = read_json(&path);
    assert_eq!(v["parameters"]["a"], "0.3");
    assert_eq!(v["tables"][0]["rows"].as_array().unwrap().len(), 5);

    let out = bin(&["--config", cfg.to_str().unwrap(), "--json", path.to_str().unwrap(), "sumrule", "--a", "0.9"]);
    assert_eq!(code(&out), 0);
    assert_eq!(read_json(&path)["parameters"]["a"], "0.9");
}

#[test]
fn strict_profile_is_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = bin(&[
        "--tolerance-profile",
        "strict",
        "--json",
        path.to_str().unwrap(),
        "reconstruct",
        "--a",
        "0.8",
        "--r",
        "0.5",
        "--x-over-l",
        "0.25",
    ]);
    assert_eq!(code(&out), 0);
    let v = read_json(&path);
    assert_eq!(v["parameters"]["tolerance_profile"], "strict");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}
