use std::process::{Command, Output};

use serde_json::Value;

fn dlcurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dlcurve")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = dlcurve(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn check<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["checks"].as_array().unwrap().iter().find(|c| c["check"] == name).unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn verify_all_s1_passes() {
    let r = report(&["verify-all", "--s", "1"]);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["command"], "verify-all");
    assert_eq!(r["overall"], true);
    assert_eq!(check(&r, "sv.deg-s")["computed"], "520");
    assert_eq!(check(&r, "ovoid.size")["computed"], "65");
    assert!(!r["unverified_claims"].as_array().unwrap().is_empty());
}

#[test]
fn count_s1_n3() {
    let r = report(&["count", "--s", "1", "--n", "3"]);
    let c = check(&r, "count.n=3");
    assert_eq!(c["computed"], "65");
    assert_eq!(c["params"]["s"], "1");
}

#[test]
fn hermitian_zeta() {
    let r = report(&["zeta", "--family", "hermitian", "--q", "16", "--n", "1,2"]);
    assert_eq!(r["overall"], true);
    assert_eq!(check(&r, "zeta.predicted.n=1")["computed"], "65");
}

#[test]
fn semigroup_gens() {
    let r = report(&["semigroup", "--gens", "8,10,12,13"]);
    let rec = &r["records"][0];
    assert_eq!(rec["genus"], "14");
    assert_eq!(rec["frobenius"], "27");
    assert_eq!(rec["symmetric"], true);
    assert_eq!(check(&r, "semigroup.selmer")["computed"], "14");
}

#[test]
fn ovoid_single_check() {
    let r = report(&["ovoid", "--s", "1", "--check", "secant"]);
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["check"].as_str().unwrap()).collect();
    assert!(names.iter().all(|n| n.starts_with("ovoid.secant")), "{names:?}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["count", "--family", "hermitian", "--q", "8"][..],
        &["count", "--s", "0"],
        &["semigroup", "--gens", "4,6"],
        &["count", "--family", "hermitian"],
        &["semigroup"],
        &["frobnicate"],
    ] {
        let out = dlcurve(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["orders", "--s", "1", "--seed", "42", "--samples", "3"];
    let a = dlcurve(&args);
    let b = dlcurve(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let seq = dlcurve(&["orders", "--s", "1", "--seed", "42", "--samples", "3", "--sequential"]);
    assert_eq!(a.stdout, seq.stdout);
    let other = dlcurve(&["orders", "--s", "1", "--seed", "43", "--samples", "3"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("dlcurve-cli-{}.json", std::process::id()));
    let out = dlcurve(&["count", "--s", "1", "--n", "1", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["seed"], "1");
    std::fs::remove_file(path).unwrap();
}
