use std::process::Command;

use emc_cli::{exit_code_for, run, EXIT_RESOURCE, EXIT_USAGE, EXIT_VIOLATION};
use emc_core::{parse_natural, Error};
use serde_json::Value;

fn emc(args: &[&str]) -> (i32, Value) {
    let out = run(std::iter::once("emc").chain(args.iter().copied()));
    let json = if out.stdout.is_empty() { Value::Null } else { serde_json::from_str(&out.stdout).unwrap() };
    (out.code, json)
}

fn code(args: &[&str]) -> i32 {
    run(std::iter::once("emc").chain(args.iter().copied())).code
}

#[test]
fn documented_examples() {
    assert_eq!(code(&["check", "--n", "42", "--k", "1806"]), 0);
    assert_eq!(code(&["super", "--n", "2", "--k", "6", "--power", "2"]), 1);
    let (c, report) = emc(&["tables", "reproduce"]);
    assert_eq!(c, 0);
    assert_eq!(report["details"]["rows"].as_array().unwrap().len(), 9);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["check", "--n", "3", "--k", "6"]), 1);
    assert_eq!(code(&["check", "--n", "3"]), EXIT_USAGE);
    assert_eq!(code(&["check", "--n", "-3", "--k", "6"]), EXIT_USAGE);
    assert_eq!(code(&["super", "--n", "2", "--k", "6", "--power", "4"]), EXIT_USAGE);
    assert_eq!(code(&["check", "--direct", "--cap", "100", "--n", "2", "--k", "1806"]), EXIT_RESOURCE);
    assert_eq!(code(&["search", "--r", "2", "--bound", "1000000000"]), EXIT_RESOURCE);
    assert_eq!(code(&["egyptian", "--k", "8490421583559688410706771261086"]), EXIT_RESOURCE);
    assert_eq!(code(&["lerch", "--pmax", "50"]), 0);
    assert_eq!(exit_code_for(&Error::TheoremViolation("x".into())), EXIT_VIOLATION);
}

#[test]
fn check_modes() {
    let (c, r) = emc(&["check", "--direct", "--n", "2", "--k", "6"]);
    assert_eq!(c, 0);
    assert_eq!(r["details"]["direct"], Value::Bool(true));
    assert!(r["details"]["conditions"].is_null());

    let (c, r) = emc(&["check", "--conditions", "--n", "6", "--k", "6"]);
    assert_eq!(c, 0);
    assert!(r["details"]["direct"].is_null());

    // Beyond the cap, --both falls back to the conditions.
    let (c, r) = emc(&[
        "check",
        "--n",
        "1863851053628494074457830",
        "--k",
        "8490421583559688410706771261086",
        "--primes",
        "2,3,11,23,31,47059,2217342227,1729101023519",
    ]);
    assert_eq!(c, 0);
    assert!(r["details"]["direct"].is_null());
    assert_eq!(r["details"]["conditions"]["verdict"], Value::Bool(true));

    assert_eq!(code(&["check", "--direct", "--conditions", "--n", "2", "--k", "6"]), EXIT_USAGE);
    assert_eq!(code(&["check", "--n", "2", "--k", "6", "--primes", "2,5"]), EXIT_USAGE);
}

#[test]
fn other_commands() {
    let (c, r) = emc(&["conditions", "--k", "47058", "--exponent-class", "330"]);
    assert_eq!((c, r["inputs"]["n"].as_str()), (0, Some("multiple-of:330")));
    let (c, r) = emc(&["conditions", "--k", "1806"]);
    assert_eq!((c, r["details"]["minimal_valid_exponent"].as_str()), (0, Some("42")));
    assert_eq!(code(&["egyptian", "--k", "10"]), 1);
    let (c, r) = emc(&["minimal-exponent", "--k", "2214502422"]);
    assert_eq!((c, r["details"]["minimal_exponent"].as_str()), (0, Some("235290")));
    assert_eq!(code(&["minimal-exponent", "--k", "10"]), 1);
    let (_, r) = emc(&["search", "--r", "4", "--bound", "10000"]);
    assert_eq!(r["details"]["solutions"], serde_json::json!(["1806"]));
    assert_eq!(code(&["verify-record", "--k", "42", "--primes", "2,3,7", "--exponent", "6"]), 0);
    assert_eq!(code(&["verify-record", "--k", "42", "--primes", "2,3,5"]), 1);
    assert_eq!(code(&["zagier", "--k", "1806"]), 0);
    assert_eq!(code(&["zagier", "--k", "30"]), 1);
    let (c, r) = emc(&["zagier", "--limit", "2000"]);
    assert_eq!(c, 0);
    assert_eq!(r["details"]["truth_set"], serde_json::json!(["1", "2", "6", "42", "1806"]));
    assert_eq!(code(&["eisenstein", "--pmax", "30"]), 0);
    let (c, r) = emc(&["explore-p3", "--n", "12", "--k", "42"]);
    assert_eq!((c, r["verdict"].as_str()), (0, Some("exploration")));
    assert_eq!(r["details"]["mod_k2_hypothesis"], Value::Bool(true));
    let (c, r) = emc(&["remark7", "--nmax", "60"]);
    assert_eq!(c, 0);
    assert_eq!(r["details"]["p7"].as_array().unwrap().len(), 10);
    assert_eq!(code(&["family2", "--n", "4", "--d", "3"]), 0);
    assert_eq!(code(&["family2", "--n", "2", "--d", "3"]), 1);
}

#[test]
fn records_file_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("records.toml");
    std::fs::write(
        &path,
        "[[record]]\nk = \"42\"\nprimes = [\"2\", \"3\", \"7\"]\nminimal_exponent = \"6\"\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    // The search still finds 2, 6, 1806 and 47058, which the file omits.
    let (c, r) = emc(&["tables", "reproduce", "--records", p]);
    assert_eq!(c, 1);
    assert_eq!(r["findings"].as_array().unwrap().len(), 4);
    let (c, _) = emc(&["tables", "reproduce", "--records", p, "--limit", "50"]);
    assert_eq!(c, 1);
    let (c, _) = emc(&["tables", "reproduce", "--records", p, "--limit", "41"]);
    assert_eq!(c, 1);
    assert_eq!(code(&["tables", "reproduce", "--records", "/nonexistent.toml"]), EXIT_USAGE);
}

fn all_strings(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::String(s) => out.push(s.clone()),
        Value::Array(a) => a.iter().for_each(|x| all_strings(x, out)),
        Value::Object(o) => o.values().for_each(|x| all_strings(x, out)),
        _ => {}
    }
}

#[test]
fn reports_are_deterministic_and_lossless() {
    let args = ["tables", "reproduce"];
    let a = run(std::iter::once("emc").chain(args));
    let b = run(std::iter::once("emc").chain(args));
    assert_eq!(a.stdout, b.stdout);

    let report: Value = serde_json::from_str(&a.stdout).unwrap();
    let keys: Vec<_> = report.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["command", "inputs", "verdict", "details", "findings", "version"]);
    let mut strings = Vec::new();
    all_strings(&report["details"], &mut strings);
    let numeric: Vec<_> = strings.iter().filter(|s| s.bytes().all(|c| c.is_ascii_digit())).collect();
    assert!(numeric.iter().any(|s| s.as_str() == "8490421583559688410706771261086"));
    for s in numeric {
        assert_eq!(&parse_natural(s).unwrap().to_string(), s);
    }
}

#[test]
fn binary_uses_exit_codes_and_threads_agree() {
    let bin = env!("CARGO_BIN_EXE_emc");
    let one = Command::new(bin)
        .args(["ppp-search", "--limit", "20000000"])
        .env("RAYON_NUM_THREADS", "1")
        .output()
        .unwrap();
    let many = Command::new(bin)
        .args(["ppp-search", "--limit", "20000000"])
        .env("RAYON_NUM_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);

    let out = Command::new(bin).args(["super", "--n", "2", "--k", "6", "--power", "2", "-v"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("super [n=2 k=6 power=2]: fails"));
}
