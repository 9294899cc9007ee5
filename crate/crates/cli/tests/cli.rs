use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn puro(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_puro"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = puro(&all);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn decide_reports_witness_and_route() {
    let v = json(&["decide", "1,3,5,4"]);
    assert_eq!(v["status"], "pure");
    assert_eq!(v["witness"].as_array().unwrap().len(), 4);

    let v = json(&["decide", "1,2,3,5"]);
    assert_eq!(v["status"], "not_pure");
    assert_eq!(v["route"], "not_o_sequence");
}

#[test]
fn check_flags_shape() {
    let v = json(&["check", "1,3,6,10,12,12,3"]);
    assert_eq!(v["o_sequence"], true);
    assert_eq!(v["shape"]["is_unimodal"], true);
}

#[test]
fn bad_input_exits_two() {
    for args in [
        &["reproduce", "nope"][..],
        &["decide", "1,x,3"],
        &["wlp", "--random", "1", "3", "5"],
        &["type2", "x^2"],
    ] {
        let out = puro(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
    let out = puro(&["reproduce", "nope"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("char257"));
}

#[test]
fn seeded_output_is_stable() {
    let a = puro(&[
        "wlp", "--random", "3", "2", "5", "--seed", "7", "--format", "json",
    ]);
    let b = puro(&[
        "wlp",
        "--random",
        "3",
        "2",
        "5",
        "--seed",
        "7",
        "--format",
        "json",
        "--threads",
        "1",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = puro(&["type2", "--random", "20", "--seed", "3", "--format", "tsv"]);
    let d = puro(&["type2", "--random", "20", "--seed", "3", "--format", "tsv"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn formats_agree() {
    let v = json(&["fvector", "plane", "3"]);
    let tsv =
        String::from_utf8(puro(&["fvector", "plane", "3", "--format", "tsv"]).stdout).unwrap();
    let first = v.as_object().unwrap().keys().next().unwrap().clone();
    assert!(tsv.lines().any(|l| l.starts_with(&first)), "{tsv}");
}

#[test]
fn reproduce_all_passes() {
    let out = puro(&["reproduce", "--all", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["char257"]["passed"], true);
}

fn fixture_copy(tag: &str) -> PathBuf {
    let src = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let dst = std::env::temp_dir().join(format!("puro-fixtures-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dst).unwrap();
    for entry in fs::read_dir(&src).unwrap() {
        let entry = entry.unwrap();
        fs::copy(entry.path(), dst.join(entry.file_name())).unwrap();
    }
    dst
}

#[test]
fn fixture_override_and_mismatch_exit() {
    let dir = fixture_copy("mismatch");
    let path = dir.join("char257.txt");
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.contains("determinant: 70"));
    fs::write(&path, text.replace("determinant: 70", "determinant: 71")).unwrap();

    let out = Command::new(env!("CARGO_BIN_EXE_puro"))
        .args(["reproduce", "char257", "--format", "json"])
        .env("PURO_FIXTURES", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
    assert!(!v["mismatches"].as_array().unwrap().is_empty());

    let out = Command::new(env!("CARGO_BIN_EXE_puro"))
        .args(["reproduce", "char257"])
        .env("PURO_FIXTURES", dir.join("missing"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    fs::remove_dir_all(dir).ok();
}
