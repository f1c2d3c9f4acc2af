use std::io::Write;
use std::process::{Command, Output};

use pblab::regress::RegressHooks;
use pblab::sample::{sample, SampleMode};
use pblab::{run_with_hooks, Exit, RunConfig};
use pblab_core::chow::{chern_from_sequence, BundleSeq, ChernPair};
use pblab_core::GbOptions;
use serde_json::Value;

fn pblab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pblab"))
        .args(args)
        .env_remove("PBLAB_BUDGET")
        .output()
        .expect("binary runs")
}

fn triple_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn validate_exit_codes() {
    let good = triple_file("n = 2\nf = X0^2\ng = X1\nh = X2\n");
    let out = pblab(&["validate", "--input", good.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("valid"));

    let bad = triple_file("n = 2\nf = X0*X1\ng = X1\nh = X2\n");
    let out = pblab(&["validate", "--json", "--input", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["triple"]["valid"], false);
    assert_eq!(v["triple"]["report"]["witness_point"], serde_json::json!([1, 0, 0]));

    let malformed = triple_file("n = 2\nf = X0^^2\ng = X1\nh = X2\n");
    let out = pblab(&["validate", "--input", malformed.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let out = pblab(&["validate", "--input", "/nonexistent/triple.txt"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn pipeline_reports() {
    let out = pblab(&["pipeline", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    for key in ["config", "triple", "hypersurface", "blowup", "chow"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["hypersurface"]["smoothness"]["is_smooth"], true);
    assert_eq!(v["chow"]["xi_top"], 2);
    assert_eq!(v["blowup"]["all_smooth"], true);
    let charts = v["blowup"]["charts"].as_array().unwrap();
    assert_eq!(charts.len(), 9);
    for c in charts {
        for key in ["chart", "multiplicity", "strict", "verdict"] {
            assert!(c.get(key).is_some());
        }
    }

    let cubic = triple_file("n = 3\nf = X0^3\ng = X1^2\nh = X2^2\n");
    let v = json(&pblab(&["pipeline", "--json", "--input", cubic.path().to_str().unwrap()]));
    assert_eq!(v["hypersurface"]["smoothness"]["singular_contains_line"], true);
    assert_eq!(v["hypersurface"]["smoothness"]["multiplicity_along_line"], 2);
    assert_eq!(v["chow"]["xi_top"], 3);
    assert_eq!(v["blowup"]["all_smooth"], true);
}

#[test]
fn pipeline_stops_at_invalid_triple() {
    let bad = triple_file("n = 2\nf = X0*X1\ng = X1\nh = X2\n");
    let out = pblab(&["pipeline", "--json", "--input", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["failed_stage"], "validate");
    for key in ["hypersurface", "blowup", "chow"] {
        assert!(v.get(key).is_none(), "{key} present");
    }
}

#[test]
fn json_is_byte_identical() {
    for args in [
        &["pipeline", "--json", "--n", "3"][..],
        &["sample", "--json", "--n", "3", "--seed", "9", "--trials", "6"][..],
        &["regress", "--json"][..],
    ] {
        let a = pblab(args);
        let b = pblab(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn sample_command() {
    let out = pblab(&["sample", "--json", "--n", "2", "--trials", "20", "--bound", "3", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let s = &json(&out)["sample"];
    let valid = s["valid"].as_u64().unwrap();
    assert!(valid >= 1);
    assert_eq!(s["trials"], 20);
    assert_eq!(s["per_trial"].as_array().unwrap().len(), 20);
    let fraction = s["fraction"].as_str().unwrap();
    let (p, q) = fraction.split_once('/').unwrap();
    let (p, q): (u64, u64) = (p.parse().unwrap(), q.parse().unwrap());
    assert_eq!(p * 20, valid * q);

    let out = pblab(&["sample", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn extra_trials_keep_earlier_ones() {
    let opts = GbOptions::default();
    let short = sample(41, 3, 2, 5, SampleMode::Random, &opts).unwrap();
    let long = sample(41, 3, 2, 12, SampleMode::Random, &opts).unwrap();
    assert_eq!(short.per_trial[..], long.per_trial[..5]);
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_pblab"))
        .args(["pipeline", "--n", "4", "--json"])
        .env("PBLAB_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["config"]["budget"], 1);
    assert!(v["failed_stage"].is_string());

    let out = pblab(&["pipeline", "--n", "4", "--budget", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn regress_command() {
    let out = pblab(&["regress", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let results = json(&out)["regress"]["results"].as_array().unwrap().clone();
    assert!(!results.is_empty());
    assert!(results.iter().all(|r| r["passed"] == true));
}

fn tampered(seq: &BundleSeq) -> ChernPair {
    let c = chern_from_sequence(seq);
    ChernPair { c1: c.c1, c2: c.c2 - 1 }
}

#[test]
fn tampered_chern_fails_regression() {
    let cfg = RunConfig::new(pblab::Command::Regress);
    let (report, exit) = run_with_hooks(&cfg, &RegressHooks { chern: tampered });
    assert_eq!(exit, Exit::Rejected);
    let regress = report.regress.unwrap();
    let degree = regress.results.iter().find(|r| r.name == "degree_identity").unwrap();
    assert!(!degree.passed);
}

#[test]
fn chow_command() {
    let out = pblab(&["chow", "--json", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let c = &json(&out)["chow"];
    assert_eq!(c["chern"], serde_json::json!({"c1": 4, "c2": 12}));
    assert_eq!(c["xi_top"], 4);
    assert_eq!(c["stability"]["verdict"], "stable");
    assert_eq!(c["cubic_forms"]["equivalence"], Value::Null);
}
