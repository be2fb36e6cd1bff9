//! The compiled binary: exit codes and output streams.

use std::process::Command;

fn cyclocode(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_cyclocode")).args(args).output().expect("binary runs")
}

#[test]
fn code_example() {
    let out = cyclocode(&["code", "--p", "2", "--m", "5", "--poly", "x^5+x^2+1", "--function", "kasami", "--h", "2", "--distance", "exact"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((v["n"].as_u64(), v["k"].as_u64(), v["d"].as_u64()), (Some(31), Some(15), Some(8)));
}

#[test]
fn verify_gold_passes() {
    let out = cyclocode(&["verify", "--lemma", "gold", "--m-max", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["failed"], 0);
    assert!(v["cells"].as_u64().unwrap() > 0);
}

#[test]
fn verify_mismatch_exits_one() {
    let out = cyclocode(&["verify", "--lemma", "bracken-leander", "--m-max", "4", "--emit", "csv"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().contains("false"));
}

#[test]
fn usage_error_exits_two() {
    let out = cyclocode(&["code", "--m", "5", "--function", "gold"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8(out.stderr).unwrap().contains("--h"));
}

#[test]
fn sweep_rows_are_sorted() {
    let out = cyclocode(&["sweep", "--function", "kasami", "--m-max", "10", "--emit", "csv", "--distance", "bounds"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let keys: Vec<(u32, u32)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let mut f = l.split(',');
            (f.next().unwrap().parse().unwrap(), f.next().unwrap().parse().unwrap())
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(keys.contains(&(9, 2)));
}
