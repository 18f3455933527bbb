use std::path::Path;
use std::process::{Command, Output};

fn hwcy(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hwcy")).args(args).env("HWCY_CACHE_DIR", cache).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(cache: &Path, args: &[&str]) -> String {
    let o = hwcy(cache, args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn factored_quintic_row() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(ok(dir.path(), &["hasse-witt", "--family", "dwork3", "--prime", "13", "--factored"]), "x^2*(x^10+3*x^5*y+y^2)\n");
}

#[test]
fn rodland_period() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(ok(dir.path(), &["solve", "--op", "rodland", "--order", "5"]), "1+5*z+109*z^2+3317*z^3+121501*z^4+O(z^5)\n");
}

#[test]
fn quintic_table_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["hasse-witt", "--family", "dwork3", "--max-prime", "47", "--factored"]);
    assert_eq!(out, golden("dwork3_factored.txt"));
}

#[test]
fn order_four_table_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["hasse-witt", "--op", "ell", "--max-prime", "59", "--z-order", "100"]);
    assert_eq!(out, golden("ell_ap.txt"));
}

#[test]
fn legendre_report_has_alternating_constant() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["verify", "--op", "legendre", "--primes", "30", "--q-order", "100", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let primes: Vec<u64> = rows.iter().map(|r| r["p"].as_u64().unwrap()).collect();
    assert_eq!(primes, hwcy_core::arith::first_primes(30)[1..]);
    for r in rows {
        let p = r["p"].as_u64().unwrap();
        let m = &r["report"]["mirror"];
        let sign = if p % 4 == 1 { 1 } else { p - 1 };
        assert_eq!(m["constant"].as_u64(), Some(sign), "p = {p}");
        assert_eq!(m["higher_vanish"], true, "p = {p}");
        assert_eq!(m["order"], 100);
        assert_eq!(r["verdict"], "pass");
    }
}

#[test]
fn table_report_shows_signed_constants() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["verify", "--op", "legendre", "--prime-list", "3,5", "--z-order", "20", "--q-order", "10"]);
    let rows: Vec<Vec<&str>> =
        out.lines().filter(|l| l.starts_with("legendre")).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows[0][..6], ["legendre", "3", "1+O(z^20)", "yes", "-1", "0"]);
    assert_eq!(rows[1][..6], ["legendre", "5", "1+O(z^20)", "yes", "1", "0"]);
    assert!(out.ends_with("# 2 checks: 2 pass, 0 weak form only, 0 fail\n"), "{out}");
}

#[test]
fn batch_is_deterministic_across_cache_state_and_workers() {
    let cold = tempfile::tempdir().unwrap();
    let args = ["verify-batch", "--primes", "12", "--z-order", "60", "--q-order", "30", "--assert", "weak"];
    let first = ok(cold.path(), &args);
    let warm = ok(cold.path(), &args);
    let mut serial_args = args.to_vec();
    serial_args.extend(["--jobs", "1", "--no-cache"]);
    let serial = ok(cold.path(), &serial_args);
    assert_eq!(first, warm);
    assert_eq!(first, serial);
    assert!(cold.path().join("dwork3").join("7.json").exists());
    let json_args: Vec<&str> = args.iter().copied().chain(["--format", "json"]).collect();
    assert_eq!(ok(cold.path(), &json_args), ok(cold.path(), &json_args));
}

#[test]
fn strong_assertion_fails_on_the_sqrt_operator() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "--op", "ell", "--prime-list", "7,11,23", "--z-order", "60", "--q-order", "30"];
    let o = hwcy(dir.path(), &args);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("PASS") && out.contains("WEAK (sqrt^p ok)") && out.contains("nonzero q^11"), "{out}");
    let weak: Vec<&str> = args.iter().copied().chain(["--assert", "weak"]).collect();
    assert_eq!(hwcy(dir.path(), &weak).status.code(), Some(0));
}

#[test]
fn reconstruction_from_cache() {
    let dir = tempfile::tempdir().unwrap();
    let only = ["reconstruct", "--op", "ell", "--primes", "20", "--terms", "3", "--cached-only"];
    assert_eq!(hwcy(dir.path(), &only).status.code(), Some(2));
    let out = ok(dir.path(), &["reconstruct", "--op", "ell", "--primes", "20", "--terms", "3"]);
    assert_eq!(ok(dir.path(), &only), out);
    assert!(out.starts_with("# ell: 9 primes (11,13,17,19,31,37,53,59,71)\n"), "{out}");
    assert!(out.contains("0\t1\tyes\t1\n1\t-12500\tyes\t-12500\n"), "{out}");
}

#[test]
fn mirror_qexp_and_factor() {
    let dir = tempfile::tempdir().unwrap();
    let m = ok(dir.path(), &["mirror", "--op", "legendre", "--order", "7"]);
    assert!(m.ends_with("z(q) = 16*q-128*q^2+704*q^3-3072*q^4+11488*q^5-38400*q^6+O(q^7)\n"), "{m}");
    assert_eq!(ok(dir.path(), &["qexp", "--name", "theta3", "--order", "5"]), "1+2*q+2*q^4+O(q^5)\n");
    assert_eq!(ok(dir.path(), &["factor", "--prime", "13", "--coeffs", "1,3,1"]), "1+3*y+y^2\n");
    assert_eq!(ok(dir.path(), &["factor", "--prime", "7", "--coeffs", "-1,0,0,0,0,0,0,1"]), "(6+y)^7\n");
    assert_eq!(ok(dir.path(), &["factor", "--prime", "5", "--coeffs", "0,0,2,2"]), "2*y^2*(1+y)\n");
    let g = ok(dir.path(), &["solve", "--expr", "theta^2 - 16*z*(theta+1/2)^2", "--order", "3", "--log"]);
    assert_eq!(g, "1+4*z+36*z^2+O(z^3)\n8*z+84*z^2+O(z^3)\n");
}

#[test]
fn errors_exit_with_status_two() {
    let dir = tempfile::tempdir().unwrap();
    let db = dir.path().join("bad.toml");
    std::fs::write(&db, "[[operator]]\nid = \"a\"\nexpr = \"theta^2 - z\"\n\n[[operator]]\nid = \"b\"\nexpr = \"theta^^2\"\n")
        .unwrap();
    let o = hwcy(dir.path(), &["--db", db.to_str().unwrap(), "verify-batch"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("record 2 (`b`)"), "{err}");
    assert_eq!(hwcy(dir.path(), &["solve", "--op", "nope"]).status.code(), Some(2));
    assert_eq!(hwcy(dir.path(), &["verify", "--op", "legendre", "--z-order", "1"]).status.code(), Some(2));
    assert_eq!(hwcy(dir.path(), &["hasse-witt", "--op", "ell", "--prime", "7", "--factored"]).status.code(), Some(2));
    assert!(!hwcy(dir.path(), &["verify"]).status.success());
}
