use std::process::{Command, Output};

use serde_json::Value;

fn fibzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibzeta")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn fib_prints_sequence() {
    let out = fibzeta(&["fib", "--ell", "3", "--n-max", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,value");
    assert_eq!(lines[1], "-1,0");
    assert_eq!(&lines[lines.len() - 2..], ["6,13", "7,24"]);
}

#[test]
fn fib_json() {
    let out = fibzeta(&["--format", "json", "fib", "--ell", "2", "--n-max", "90"]);
    let v = json(&out);
    let last = v.as_array().unwrap().last().unwrap();
    assert_eq!(last["n"], 90);
    assert_eq!(last["value"], "2880067194370816120");
}

#[test]
fn invalid_arguments_are_usage_errors() {
    for args in [
        &["fib", "--ell", "3", "--n-max", "0"][..],
        &["fib", "--ell", "1", "--n-max", "5"],
        &["roots", "--ell", "1"],
        &["eval", "--ell", "2", "--s", "2+"],
        &["--tol", "-1", "eval", "--ell", "2", "--s", "2"],
        &["poles", "--ell", "2", "--re", "1:-1", "--im", "0:1"],
        &["special", "--ell", "2", "--m", "0"],
        &["frobnicate"],
    ] {
        assert_eq!(fibzeta(args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(fibzeta(&["--help"]).status.code(), Some(0));
}

#[test]
fn roots_report() {
    let v = json(&fibzeta(&["--precision", "128", "roots", "--ell", "2"]));
    assert!(v["alpha"].as_str().unwrap().starts_with("1.6180339887498948482"));
    assert_eq!(v["roots"].as_array().unwrap().len(), 2);
    assert!(v["roots"][1]["re"].as_str().unwrap().starts_with("-0.618033988749894848"));
}

#[test]
fn eval_direct_at_two() {
    let v = json(&fibzeta(&["eval", "--ell", "2", "--s", "2+0i"]));
    assert_eq!(v["method"], "direct");
    assert_eq!(v["bound_kind"], "rigorous");
    assert!(v["value_re"].as_str().unwrap().starts_with("2.42632075116724118774"));
    assert_eq!(v["s"]["re"], "2");
}

#[test]
fn eval_at_pole_reports_tuple() {
    let out = fibzeta(&["eval", "--ell", "2", "--s", "0", "--method", "continuation"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["error"], "pole_proximity");
    assert_eq!(v["k"], 0);
    assert_eq!(v["branch_n"], 0);
}

#[test]
fn eval_left_half_plane() {
    let v = json(&fibzeta(&["eval", "--ell", "4", "--s", "-1.5+1i"]));
    assert_eq!(v["method"], "continuation");
    assert_eq!(v["bound_kind"], "heuristic");
    assert!(v["value_re"].as_str().unwrap().starts_with("0.32968069848489417094839708"));
    assert!(v["value_im"].as_str().unwrap().starts_with("-0.27563830007703230330220653"));
}

#[test]
fn eval_csv() {
    let out = fibzeta(&["--format", "csv", "--precision", "96", "--tol", "1e-15", "eval", "--ell", "3", "--s", "1"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "s_re,s_im,value_re,value_im,error_bound,bound_kind,method,terms_used");
    assert!(lines.next().unwrap().starts_with("1,0,3.0612290851054"));
}

#[test]
fn special_values() {
    let v = json(&fibzeta(&["special", "--ell", "2", "--m", "1"]));
    assert_eq!(v["rational"], "-1/1");
    assert_eq!(v["certified"], true);
    assert_eq!(v["precisions_checked"], serde_json::json!([256, 320]));
    let out = fibzeta(&["special", "--ell", "3", "--m", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "pole");
}

#[test]
fn poles_window() {
    let v = json(&fibzeta(&["--precision", "128", "poles", "--ell", "2", "--re", "-4.5:0.5", "--im", "-1:1"]));
    let groups = v.as_array().unwrap();
    assert_eq!(groups.len(), 2);
    let reals: Vec<&str> = groups.iter().map(|g| g["location"]["re"].as_str().unwrap()).collect();
    assert!(reals.contains(&"0") && reals.contains(&"-4"));
    assert!(groups.iter().all(|g| g["genuine"] == true && g["multiplicity"] == 1));
}

#[test]
fn grid_layout() {
    let args = ["--precision", "96", "--tol", "1e-15", "grid", "--ell", "2", "--re", "-1:0", "--im", "0:0.5", "--step", "0.5"];
    let out = fibzeta(&args);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "re,im,abs,arg");
    assert_eq!(lines.len(), 7);
    assert!(lines[1].starts_with("-1,0,1,"));
    assert_eq!(lines[5], "0,0,,");
    assert_eq!(out.stdout, fibzeta(&args).stdout);
}
