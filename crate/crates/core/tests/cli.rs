use std::process::Command;

use symtrace::cli::run_with;
use symtrace::tensorop::{from_json, symmetrizer, symmetrizer_prime};
use symtrace::{Config, Partition};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("symtrace").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn chartable_csv() {
    let (code, out, _) = run(&["chartable", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[1], "class_size,1,3,2");
    assert_eq!(lines[2], "(3),1,1,1");
    assert_eq!(lines[3], "\"(2,1)\",2,0,-1");
    assert_eq!(lines[4], "\"(1,1,1)\",1,-1,1");
}

#[test]
fn chartable_single_cell_and_limit() {
    let (code, out, _) = run(&["chartable", "1"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["rows"][0]["values"], serde_json::json!([1]));
    let (code, _, err) = run(&["chartable", "99"]);
    assert_eq!(code, 2);
    assert!(err.contains("limit exceeded"), "{err}");
}

#[test]
fn dim_records() {
    let (code, out, _) = run(&["dim", "--alpha", "2,1", "--n", "2"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["dim"], 4);
    assert_eq!(v["degree"], 2);
    assert_eq!(v["hook_content"], 6);
    assert_eq!(v["alpha"], serde_json::json!([2, 1]));
    let (code, out, _) = run(&["dim", "--alpha", "1,1,1", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["dim"], 0);
    let (code, _, err) = run(&["dim", "--alpha", "1,2", "--n", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("not a partition"), "{err}");
    let (code, _, _) = run(&["dim", "--alpha", "0", "--n", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn symmetrizer_emission_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let (code, out, _) = run(&[
        "symmetrizer", "--alpha", "2", "--n", "2", "--prime", "--emit", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["trace"], "6/1");
    assert_eq!(v["dim"], 4);
    let emitted = from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let alpha = Partition::new(vec![2]).unwrap();
    assert_eq!(emitted, symmetrizer_prime(&alpha, 2, &Config::default()).unwrap());

    let (code, _, _) = run(&["symmetrizer", "--alpha", "1", "--n", "3", "--emit", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let emitted = from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(emitted, symtrace::ExactOperator::identity(3));

    let (code, out, _) = run(&["symmetrizer", "--alpha", "2,1", "--n", "3", "--emit", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let alpha = Partition::new(vec![2, 1]).unwrap();
    let emitted = from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(emitted, symmetrizer(&alpha, 3, &Config::default()).unwrap());
    assert_eq!(json(&out)["rank"], 16);
}

#[test]
fn symmetrizer_rank_matches_dim() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let (code, out, _) = run(&["symmetrizer", "--alpha", "2,1,1", "--n", "2", "--emit", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(path.exists());
    let rank = json(&out)["rank"].clone();
    let (_, dim_out, _) = run(&["dim", "--alpha", "2,1,1", "--n", "2"]);
    assert_eq!(rank, json(&dim_out)["dim"]);
}

#[test]
fn size_guard_flag() {
    let (code, _, err) = run(&["symmetrizer", "--alpha", "2,1", "--n", "2", "--size-guard", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("limit exceeded"));
    let (code, _, _) = run(&["verify", "main-theorem", "--m", "3", "--n", "2", "--size-guard", "4"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_exit_codes() {
    let (code, out, _) = run(&["verify", "all", "--m", "3", "--n", "2"]);
    assert_eq!(code, 0);
    let reports = json(&out);
    assert_eq!(reports.as_array().unwrap().len(), 8);
    assert!(reports.as_array().unwrap().iter().all(|r| r["status"] == "pass"));
    let (code, out, _) = run(&["verify", "main-theorem", "--m", "4", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)[0]["identity_id"], "main-theorem");
    let (code, out, _) = run(&["verify", "dimension-theorem", "--m", "2", "--n", "2", "--inject-fault"]);
    assert_eq!(code, 1);
    let report = &json(&out)[0];
    assert_eq!(report["status"], "fail");
    assert_ne!(report["counterexample"]["lhs"], report["counterexample"]["rhs"]);
    let (code, _, _) = run(&["verify", "nosuch"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["verify"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_csv_and_text() {
    let (code, out, _) = run(&["verify", "coset-decomposition", "--m", "4", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("identity_id,status,elapsed_ms,seed,domain,counterexample"));
    assert!(out.lines().nth(1).unwrap().starts_with("coset-decomposition,pass,"));
    let (code, out, _) = run(&["verify", "corollary", "--m", "3", "--n", "3", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS corollary"));
}

#[test]
fn no_floating_point_in_output() {
    for args in [
        vec!["chartable", "5", "--format", "csv"],
        vec!["dim", "--alpha", "3,2", "--n", "4"],
        vec!["symmetrizer", "--alpha", "2,1", "--n", "2"],
        vec!["verify", "all", "--m", "3", "--n", "2", "--format", "csv"],
    ] {
        let (_, out, _) = run(&args);
        let re_float = out
            .split(|c: char| !(c.is_ascii_digit() || c == '.'))
            .any(|tok| tok.contains('.') && tok.chars().any(|c| c.is_ascii_digit()));
        assert!(!re_float, "{args:?} printed {out}");
    }
}

#[test]
fn binary_honours_env_guard() {
    let bin = env!("CARGO_BIN_EXE_symtrace");
    let status = Command::new(bin)
        .args(["symmetrizer", "--alpha", "2", "--n", "3"])
        .env("SYMTRACE_SIZE_GUARD", "8")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    let status = Command::new(bin)
        .args(["symmetrizer", "--alpha", "2", "--n", "3", "--size-guard", "9"])
        .env("SYMTRACE_SIZE_GUARD", "8")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    let status = Command::new(bin).args(["verify", "all", "--m", "3", "--n", "2"]).output().unwrap();
    assert_eq!(status.status.code(), Some(0));
}
