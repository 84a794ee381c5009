use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mirrorci")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn report_schema() {
    let out = run(&["pf-verify", "--ambient", "4", "--degrees", "5", "--order", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for key in ["command", "spec", "order", "seed", "results", "assertions"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["command"], "pf-verify");
    assert_eq!(v["order"], 20);
    for a in v["assertions"].as_array().unwrap() {
        assert!(a["name"].is_string() && a["detail"].is_string());
        assert_eq!(a["pass"], true);
    }
}

#[test]
fn quintic_instantons() {
    let v = json(&run(&["instantons", "--ambient", "4", "--degrees", "5", "--order", "4"]));
    let n = &v["results"]["instantons"];
    assert_eq!(n["1"], "2875/1");
    assert_eq!(n["4"], "242467530000/1");
}

#[test]
fn order_zero_is_empty() {
    let out = run(&["instantons", "--ambient", "4", "--degrees", "5", "--order", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["instantons"], serde_json::json!({}));
}

#[test]
fn first_instanton_matches_lines_in_run() {
    let v = json(&run(&["instantons", "--ambient", "5", "--degrees", "3,3", "--order", "1"]));
    assert_eq!(v["results"]["instantons"]["1"], "1053/1");
    let oracle = v["assertions"].as_array().unwrap().iter().find(|a| a["name"] == "lines_oracle").unwrap();
    assert_eq!(oracle["pass"], true);
}

#[test]
fn relation_and_lines() {
    let v = json(&run(&["relation", "--ambient", "5", "--degrees", "2"]));
    assert_eq!(v["results"]["relation"], "p^5 = 4*q*p");
    let out = run(&["lines", "--ambient", "3", "--degrees", "3", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("lines: 27/1"));
}

#[test]
fn same_seed_same_bytes() {
    let args = ["recursion-verify", "--ambient", "3", "--degrees", "3", "--order", "3", "--seed", "42"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["recursion-verify", "--ambient", "3", "--degrees", "3", "--order", "3", "--seed", "43"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn exit_codes() {
    // wrong regime
    assert_eq!(run(&["instantons", "--ambient", "5", "--degrees", "2"]).status.code(), Some(2));
    // more equations than ambient dimension
    assert_eq!(run(&["pf-verify", "--ambient", "1", "--degrees", "2,2"]).status.code(), Some(2));
    // usage error
    assert_eq!(run(&["lines", "--degrees", "3"]).status.code(), Some(2));
    assert_eq!(run(&["lines", "--ambient", "3", "--trials", "0"]).status.code(), Some(2));
    // weight space too crowded for the genericity conditions
    let out = run(&["recursion-verify", "--ambient", "600", "--order", "1", "--trials", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}
