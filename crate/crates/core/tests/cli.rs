use std::path::{Path, PathBuf};
use std::process::Command;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).to_path_buf()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_opecalc"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("run opecalc");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(root().join("tests/golden").join(name)).unwrap()
}

#[test]
fn ope_virasoro_golden() {
    let (code, out, _) = run(&["ope", "catalog:virasoro", "L", "L"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("ope_virasoro_L_L.txt"));
}

#[test]
fn character_heisenberg_golden() {
    let (code, out, _) = run(&["character", "catalog:heisenberg", "--cutoff", "6"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("character_heisenberg_6.txt"));
    assert!(out.contains("dims: 1,1,2,3,5,7,11"));
}

#[test]
fn catalog_golden() {
    let (code, out, _) = run(&["catalog"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("catalog.txt"));
}

#[test]
fn verify_json_goldens() {
    let (code, out, _) = run(&["verify", "catalog:heisenberg", "--cutoff", "4", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("verify_heisenberg_4.json"));

    let (code, out, _) = run(&["verify", "tests/fixtures/broken.spec", "--cutoff", "3", "--format", "json"]);
    assert_eq!(code, 1);
    assert_eq!(out, golden("verify_broken_3.json"));

    let args = ["verify", "catalog:virasoro", "--cutoff", "3", "--format", "json", "--sample", "500", "--seed", "7"];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(out, golden("verify_virasoro_sampled.json"));
}

#[test]
fn text_and_json_counts_agree() {
    let (_, text, _) = run(&["verify", "catalog:virasoro", "--cutoff", "3"]);
    let (_, json, _) = run(&["verify", "catalog:virasoro", "--cutoff", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let total = format!(
        "total: {} passed={} failed={} skipped={}",
        v["status"].as_str().unwrap(),
        v["passed"],
        v["failed"],
        v["skipped"]
    );
    assert!(text.contains(&total), "{text}\n{total}");
    assert!(text.contains("cutoff: 3"));
    assert!(text.contains("indices: [-3,3]"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "tests/fixtures/virasoro.spec", "--cutoff", "3"]).0, 0);
    let (code, out, _) = run(&["verify", "tests/fixtures/broken.spec", "--cutoff", "3"]);
    assert_eq!(code, 1);
    assert!(out.contains("witness"));
    let (code, _, err) = run(&["verify", "tests/fixtures/malformed.spec"]);
    assert_eq!(code, 2);
    assert!(err.contains("parse error"));
    assert_eq!(run(&["verify", "nosuch.spec"]).0, 2);
    assert_eq!(run(&["ope", "catalog:heisenberg", "a", "zz"]).0, 2);
    assert_eq!(run(&["verify", "catalog:heisenberg", "--indices", "3..-3"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn ope_forms() {
    assert_eq!(run(&["ope", "catalog:heisenberg", "a", "a"]).1, "a(z) a(w) ~ 1/(z-w)^2\n");
    let (_, out, _) = run(&["ope", "catalog:poly_comm", "x", "x^2"]);
    assert!(out.trim_end().ends_with("regular"), "{out}");
    let (code, out, _) = run(&["ope", "catalog:toroidal_tensor", "a (x) abar", "a (x) abar"]);
    assert_eq!(code, 0);
    assert!(out.contains("(z-w)^2 (zbar-wbar)^2"));
    assert!(out.contains("reduced: yes"));
}

#[test]
fn spec_file_matches_catalog() {
    let (_, from_file, _) = run(&["character", "tests/fixtures/virasoro.spec", "--cutoff", "6"]);
    assert!(from_file.contains("dims: 1,0,1,1,2,2,4"));
}
