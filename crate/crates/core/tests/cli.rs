use std::process::{Command, Output};

use serde_json::Value;

fn goodred(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goodred")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn analyze_reports_verdicts() {
    let out = goodred(&["analyze", "-3*x^4+4*x^3", "--prime", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["schema"], "goodred-report/1");
    let r = &doc["payload"]["report"];
    assert_eq!((&r["sgr"], &r["cgr"], &r["separable"]), (&Value::Bool(false), &Value::Bool(true), &Value::Bool(false)));
    assert_eq!(doc["payload"]["reduction"], "x^3");

    let r = json(&goodred(&["analyze", "x*(x-1)", "--prime", "2"]));
    assert_eq!(r["payload"]["report"]["cgr"], false);

    let out = goodred(&["analyze", "x^2", "--prime", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["payload"]["report"];
    for key in ["sgr", "cgr", "separable", "nonconstant", "branch_nonsingular", "ram_nonsingular", "theorem1_consistent"] {
        assert_eq!(r[key], true, "{key}");
    }
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["analyze", "x/0", "--prime", "3"][..],
        &["analyze", "x^2+", "--prime", "3"],
        &["analyze", "x^2", "--prime", "4"],
        &["analyze", "x^2/x", "--prime", "3"],
        &["lattes", "0", "0"],
        &["bounds", "--t", "0", "--D", "1"],
    ] {
        let out = goodred(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn bad_primes_lists() {
    let doc = json(&goodred(&["bad-primes", "x*(x-1)"]));
    let p = &doc["payload"];
    assert_eq!(p["sgr_bad"]["primes"], serde_json::json!([]));
    assert_eq!(p["cgr_bad"]["primes"], serde_json::json!(["2"]));
    assert_eq!(p["inseparable"]["primes"], serde_json::json!([]));

    let doc = json(&goodred(&["bad-primes", "(x-1)^2", "--iterate", "2"]));
    assert_eq!(doc["payload"]["cgr_bad"]["primes"], serde_json::json!(["2"]));
    assert_eq!(doc["payload"]["sgr_bad"]["primes"], serde_json::json!([]));

    let doc = json(&goodred(&["bad-primes", "x^3"]));
    assert_eq!(doc["payload"]["inseparable"]["primes"], serde_json::json!(["3"]));
}

#[test]
fn corpus_verification_exit_codes() {
    let out = goodred(&["verify-theorem", "--count", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["payload"]["violation_count"], 0);

    let out = goodred(&["verify-theorem", "--count", "60", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));

    let out = goodred(&["verify-theorem", "--skip-separability-guard"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["payload"]["violation_count"].as_u64().unwrap() > 0);
}

#[test]
fn reports_are_reproducible_without_timestamp() {
    let args = ["--no-timestamp", "verify-theorem", "--count", "40", "--seed", "3"];
    let a = goodred(&args);
    let b = goodred(&[&args[..], &["--workers", "2"]].concat());
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("generated_unix"));
    assert!(stdout(&goodred(&["verify-theorem", "--count", "1"])).contains("generated_unix"));
}

#[test]
fn dynamics_commands() {
    let out = goodred(&["orbit", "x^2-1", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let p = &json(&out)["payload"];
    assert_eq!(p["orbit"]["points"], serde_json::json!(["0", "-1"]));
    assert_eq!(p["orbit"]["cycle_length"], 2);

    let out = goodred(&["orbit", "x*(x-1)", "1/2", "--max-bits", "64"]);
    assert_eq!(out.status.code(), Some(3));

    let out = goodred(&["--text", "lattes", "-1", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("(x^2+1)^2/(4*x^3-4*x)"));

    let out = goodred(&["preper", "x^2"]);
    assert_eq!(out.status.code(), Some(0));
    let pts: Vec<String> = serde_json::from_value(json(&out)["payload"]["preperiodic"]["points"].clone()).unwrap();
    let mut pts = pts;
    pts.sort();
    assert_eq!(pts, ["-1", "0", "1", "inf"]);

    let out = goodred(&["periodic", "x^2-1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("-1"));
}

#[test]
fn bounds_command() {
    let out = goodred(&["bounds", "--t", "1", "--D", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let p = &json(&out)["payload"];
    assert_eq!(p["period_bound"], "9326265");
    assert_eq!(p["orbit_bound"]["scale"], "natural log");
    let text = stdout(&goodred(&["--text", "bounds", "--t", "1", "--D", "1"]));
    assert!(text.contains("1e12 + 12.21"), "{text}");
}

#[test]
fn iterate_flag_composes() {
    let doc = json(&goodred(&["analyze", "(x-1)^2", "--iterate", "2", "--prime", "2"]));
    let p = &doc["payload"];
    assert_eq!(p["map"], "x^4-4*x^3+4*x^2");
    assert_eq!((&p["report"]["sgr"], &p["report"]["cgr"]), (&Value::Bool(true), &Value::Bool(false)));
}
