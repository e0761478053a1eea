//! End-to-end tests of the `e8forge` binary: flag grammar, exit codes,
//! report schemas and byte-level determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_e8forge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn dims_reports_component_table() {
    let out = run(&["dims", "--model", "z5"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["dimension"], 248);
    assert_eq!(v["model"], "z5");
    let dims: Vec<u64> = v["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![48, 50, 50, 50, 50]);
}

#[test]
fn constraints_canonical_passes() {
    let out = run(&["constraints", "--model", "z3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v.as_array().unwrap().len(), 0);
}

#[test]
fn constraints_reports_violation_and_exit_1() {
    let out = run(&[
        "constraints",
        "--model",
        "z3",
        "--set",
        "a_11=1",
        "--set",
        "a_22=1",
        "--set",
        "b_1=1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 1);
    assert_eq!(list[0]["id"], "a11*a22+b1=0");
    assert_eq!(list[0]["lhs_value"], "1");
    assert_eq!(list[0]["rhs_value"], "-1");
}

#[test]
fn unknown_model_is_usage_error() {
    let out = run(&["dims", "--model", "e6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown model"));
}

#[test]
fn malformed_set_is_usage_error() {
    let out = run(&["constraints", "--model", "z3", "--set", "a_11"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["constraints", "--model", "z3", "--set", "a_11=1/0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn build_writes_deterministic_constants_file() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("a.json");
    let p2 = dir.path().join("b.json");
    let out = run(&[
        "build",
        "--model",
        "z5",
        "--scalars",
        "canonical",
        "--out",
        p1.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&[
        "build",
        "--model",
        "z5",
        "--scalars",
        "canonical",
        "--out",
        p2.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let b1 = std::fs::read(&p1).unwrap();
    let b2 = std::fs::read(&p2).unwrap();
    assert_eq!(b1, b2);
    let doc: serde_json::Value = serde_json::from_slice(&b1).unwrap();
    assert_eq!(doc["dimension"], 248);
    assert_eq!(doc["basis"].as_array().unwrap().len(), 248);
    // export emits the same bytes to stdout.
    let out = run(&["export", "--model", "z5"]);
    assert!(out.status.success());
    assert_eq!(out.stdout, b1);
}

#[test]
fn exported_file_reimports_identically() {
    let out = run(&["export", "--model", "z4"]);
    assert!(out.status.success());
    let doc = e8forge::export::import_constants(&out.stdout[..]).unwrap();
    let mut buf = Vec::new();
    e8forge::export::write_doc(&doc, &mut buf).unwrap();
    assert_eq!(buf, out.stdout);
}

#[test]
fn verify_sampled_is_reproducible_and_passes() {
    let args = [
        "verify",
        "--model",
        "z6",
        "--jacobi",
        "sampled",
        "--samples",
        "2000",
        "--seed",
        "5",
    ];
    let a = run(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["passed"], true);
    assert_eq!(v["jacobi"]["checked"], 2000);
}

#[test]
fn verify_fails_with_exit_1_on_bad_scalars() {
    let out = run(&[
        "verify",
        "--model",
        "z3",
        "--jacobi",
        "sampled",
        "--samples",
        "30000",
        "--seed",
        "1",
        "--set",
        "b_1=1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["passed"], false);
    assert!(!v["jacobi"]["failures"].as_array().unwrap().is_empty());
}

#[test]
fn scalar_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scalars.json");
    // Canonical z4 with one sign flipped through a file.
    let mut map = serde_json::Map::new();
    for (name, value) in e8forge::models::canonical_scalars(e8forge::ModelId::Z4) {
        map.insert(
            name,
            serde_json::Value::String(e8forge::format_scalar(&value)),
        );
    }
    map.insert("b2_2".into(), serde_json::Value::String("1".into()));
    std::fs::write(&path, serde_json::to_string(&map).unwrap()).unwrap();
    let out = run(&[
        "constraints",
        "--model",
        "z4",
        "--scalars",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert!(!v.as_array().unwrap().is_empty());
}

#[test]
fn threads_flag_and_env_are_accepted() {
    let out = run(&["dims", "--model", "z3", "--threads", "1"]);
    assert!(out.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_e8forge"))
        .args(["dims", "--model", "z3"])
        .env("E8FORGE_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn killing_subcommand_reports_rank() {
    let out = run(&["killing", "--model", "z5", "--samples", "50", "--seed", "3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["rank"], 248);
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_exhaustive_z3sq_exits_zero() {
    let out = run(&["verify", "--model", "z3sq", "--jacobi", "exhaustive"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["jacobi"]["checked"], 2_573_000);
    assert_eq!(v["passed"], true);
}

#[test]
fn ideal_subcommand_probes_every_seed() {
    let out = run(&["ideal", "--model", "z3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["seeds_checked"], 248);
    assert_eq!(v["min_dimension"], 248);
    assert_eq!(v["passed"], true);
}

#[test]
fn output_to_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dims.json");
    let file_run = run(&["dims", "--model", "z2z4", "--out", path.to_str().unwrap()]);
    assert!(file_run.status.success());
    assert!(file_run.stdout.is_empty());
    let stdout_run = run(&["dims", "--model", "z2z4"]);
    assert_eq!(std::fs::read(&path).unwrap(), stdout_run.stdout);
}
