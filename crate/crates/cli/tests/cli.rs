use std::process::{Command, Output};

use serde_json::Value;

fn spets(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spets")).args(args).output().expect("spawn spets")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

#[test]
fn awc_single_point() {
    let out = spets(&["awc", "--e", "2", "--r", "1", "--n", "2", "--ell", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.len(), 1);
    let r = &recs[0];
    assert_eq!(r["weights"], 5);
    assert_eq!(r["irr_total"], 5);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["schema"], 1);
}

#[test]
fn records_follow_grid_order() {
    let out = spets(&["awc", "--e", "2", "--n", "3,1,2", "--ell", "5,3"]);
    assert_eq!(out.status.code(), Some(0));
    let params: Vec<(u64, u64, u64)> = records(&out)
        .iter()
        .map(|r| {
            let p = &r["params"];
            (p["ell"].as_u64().unwrap(), p["r"].as_u64().unwrap(), p["n"].as_u64().unwrap())
        })
        .collect();
    let mut sorted = params.clone();
    sorted.sort();
    assert_eq!(params, sorted);
    assert_eq!(params.len(), 12);
}

#[test]
fn non_prime_ell_is_usage_error() {
    let out = spets(&["awc", "--ell", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn empty_grid_needs_flag() {
    let args = ["awc", "--e", "4", "--ell", "3"];
    assert_eq!(spets(&args).status.code(), Some(2));
    let mut with_flag = args.to_vec();
    with_flag.push("--allow-empty");
    let out = spets(&with_flag);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn aguade_reports_expected_discrepancy() {
    let out = spets(&["owc", "--family", "aguade", "--index", "29", "--a", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &records(&out)[0];
    assert_eq!(r["discrepancies"]["2"], 5);
    assert_eq!(r["pass"], true);
}

#[test]
fn tsv_has_sorted_header() {
    let out = spets(&["tables", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let header: Vec<&str> = text.lines().next().unwrap().split('\t').collect();
    let mut sorted = header.clone();
    sorted.sort();
    assert_eq!(header, sorted);
    assert!(header.contains(&"status"));
}

#[test]
fn cap_exceeded_is_skipped() {
    let args = ["centralizers", "--e", "1", "--n", "4", "--ell", "5", "--a", "1", "--cap", "10"];
    let out = spets(&args);
    assert_eq!(out.status.code(), Some(0));
    assert!(records(&out).iter().any(|r| r["status"] == "skipped"));
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(spets(&strict).status.code(), Some(1));
}
