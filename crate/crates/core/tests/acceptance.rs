//! One test per acceptance criterion; each prints a single PASS/FAIL line.
//! Tolerances: every comparison is exact. Runtime budgets are pinned below.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use common::*;
use hwcy_core::arith::{first_primes, first_primes_where, inert_in_q_sqrt_m5, Family, Rational};
use hwcy_core::catalog::{bundled, family_operator, lookup, HwSign};
use hwcy_core::diffop::{holomorphic_solution, mirror_map, period_at_infinity, Point};
use hwcy_core::hassewitt::{factor_hw, hw_dwork, hw_legendre, hw_truncation};
use hwcy_core::qexp::{dwork_tcoords, proportionality};
use hwcy_core::verify::{
    ap_from_period, ap_series, check_unity, classical_identity_suite, crt_reconstruct_series, dual_mum_check,
    eisenstein_relation_check, mirror_check_from, sqrt_conjecture_check, sqrt_target,
};
use hwcy_core::{PrimeField, QSeries};

const BUDGET_FACTOR: Duration = Duration::from_secs(10);
const BUDGET_AP: Duration = Duration::from_secs(60);
const BUDGET_QUINTIC: Duration = Duration::from_secs(600);
const BUDGET_SQRT: Duration = Duration::from_secs(300);

/// Written to the raw stderr handle so the line survives libtest's output
/// capture for passing tests too.
fn report(n: u32, title: &str, pass: bool, detail: impl AsRef<str>) {
    let status = if pass { "PASS" } else { "FAIL" };
    let line = format!("criterion {n:>2} [{status}] {title}: {}\n", detail.as_ref());
    std::io::stderr().write_all(line.as_bytes()).expect("stderr");
    assert!(pass, "criterion {n} ({title}) failed: {}", detail.as_ref());
}

fn ints(v: &[i64]) -> QSeries {
    QSeries::from_i64s(v)
}

fn head(s: &QSeries, n: usize) -> QSeries {
    s.truncate(n)
}

#[test]
fn criterion_01_dwork_quintic_factorizations() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut count = 0;
    for (p, want) in fixture("dwork3_factored.txt") {
        if p == 5 || p > 47 {
            continue;
        }
        count += 1;
        let got = factor_hw(&hw_dwork(3, p, false).unwrap(), 0).render();
        if got != want {
            bad.push(format!("p={p}: got {got}, want {want}"));
        }
    }
    let t = start.elapsed();
    report(
        1,
        "quintic Hasse-Witt factorizations",
        bad.is_empty() && t < BUDGET_FACTOR,
        format!("{count} rows, {} mismatches {bad:?}, {t:.2?}", bad.len()),
    );
}

#[test]
fn criterion_02_order_four_operator_invariants() {
    let start = Instant::now();
    let op = lookup("ell").unwrap().op;
    let hol = holomorphic_solution(&op, 100).unwrap();
    let mut bad = Vec::new();
    let rows = fixture("ell_ap.txt");
    for (p, want) in &rows {
        let got = ap_from_period(&hol, *p, 100).unwrap().format_with("z");
        if &got != want {
            bad.push(format!("p={p}: got {got}"));
        }
    }
    let direct = ap_series(&op, 59, 100).unwrap().format_with("z");
    let t = start.elapsed();
    let ok = bad.is_empty() && rows.len() == 17 && direct == rows[16].1 && t < BUDGET_AP;
    report(2, "A_p of the order-4 operator to O(z^100)", ok, format!("{} rows, mismatches {bad:?}, {t:.2?}", rows.len()));
}

fn congruence_after_mirror(id: &str, primes: usize, nq: usize) -> (bool, String) {
    let spec = lookup(id).unwrap();
    let ps = spec.admissible_primes(primes);
    let m = mirror_map(&spec.op, nq, &spec.kappa).unwrap();
    let mut bad = Vec::new();
    for &p in &ps {
        let c = mirror_check_from(&m, p, spec.hw_sign).unwrap();
        if !(c.higher_vanish && c.constant == 1) {
            bad.push((p, c.constant, c.first_nonzero));
        }
    }
    (bad.is_empty(), format!("{id}: {} primes up to {}, failures {bad:?}", ps.len(), ps.last().unwrap()))
}

#[test]
fn criterion_03_quintic_congruence_after_mirror() {
    let start = Instant::now();
    let (ok, detail) = congruence_after_mirror("dwork3", 30, 100);
    let t = start.elapsed();
    report(3, "quintic A_p(z(q)) = 1 mod p to O(q^100)", ok && t < BUDGET_QUINTIC, format!("{detail}, {t:.2?}"));
}

/// The unscaled claim: first 200 primes to O(q^200). Run with `--ignored`.
#[test]
#[ignore]
fn criterion_03_full_scale() {
    let (ok, detail) = congruence_after_mirror("dwork3", 200, 200);
    report(3, "quintic A_p(z(q)) = 1 mod p to O(q^200), 200 primes", ok, detail);
}

#[test]
fn criterion_04_four_families_after_mirror() {
    let mut all = true;
    let mut details = Vec::new();
    for fam in [Family::Dwork(3), Family::Wp10, Family::Wp8, Family::Wp6] {
        let (ok, d) = congruence_after_mirror(&family_operator(fam).id, 15, 100);
        all &= ok;
        details.push(d);
    }
    report(4, "four hypergeometric threefold families", all, details.join("; "));
}

#[test]
fn criterion_05_legendre() {
    let spec = lookup("legendre").unwrap();
    assert_eq!(spec.hw_sign, HwSign::Legendre);
    let m = mirror_map(&spec.op, 100, &spec.kappa).unwrap();
    let printed = ints(&[0, 16, -128, 704, -3072, 11488, -38400]);
    let lambda_ok = head(&m.z_of_q, 7) == printed;
    let primes = first_primes_where(30, |p| p != 2);
    let mut bad = Vec::new();
    for &p in &primes {
        let c = mirror_check_from(&m, p, spec.hw_sign).unwrap();
        let sign = if p % 4 == 1 { 1 } else { p - 1 };
        if !(c.higher_vanish && c.constant == sign) {
            bad.push(p);
        }
    }
    report(
        5,
        "Legendre lambda map and signed congruence",
        lambda_ok && bad.is_empty(),
        format!("z(q) head {}, {} odd primes, failures {bad:?}", m.z_of_q.truncate(7).format_with("q"), primes.len()),
    );
}

#[test]
fn criterion_06_classical_identities() {
    let checks = classical_identity_suite(50).unwrap();
    let failed: Vec<_> = checks.iter().filter(|c| !c.holds).map(|c| (&c.name, c.first_mismatch)).collect();
    let names: Vec<_> = checks.iter().map(|c| c.name.as_str()).collect();
    report(
        6,
        "theta, Eisenstein and Gamma(2) identities to O(q^50)",
        failed.is_empty() && checks.len() == 6,
        format!("{names:?}, failures {failed:?}"),
    );
}

#[test]
fn criterion_07_eisenstein_weierstrass() {
    let primes = first_primes_where(15, |p| p >= 5);
    let bad: Vec<_> = primes.iter().filter(|&&p| !eisenstein_relation_check(p, 50).unwrap().holds).collect();
    report(7, "A_p(E4/12, -E6/216) = 1 mod p to O(q^50)", bad.is_empty(), format!("primes {primes:?}, failures {bad:?}"));
}

#[test]
fn criterion_08_sqrt_reconstruction() {
    const NZ: usize = 30;
    let start = Instant::now();
    let op = lookup("ell").unwrap().op;
    let inert: Vec<u64> = first_primes(40).into_iter().filter(|&p| inert_in_q_sqrt_m5(p)).collect();
    let r = sqrt_conjecture_check(&op, &inert, NZ).unwrap();
    let samples: Vec<_> = r.inert_samples().into_iter().take(10).collect();
    let rec = crt_reconstruct_series(&samples, NZ).unwrap();
    let target = sqrt_target(NZ).unwrap();
    let matching = (0..NZ).filter(|&k| rec.coeffs[k].as_ref() == Some(target.coeff(k))).count();
    let stable = rec.stable.iter().filter(|&&s| s).count();
    let t = start.elapsed();
    let ok = r.passed() && samples.len() == 10 && matching == NZ && stable == NZ && t < BUDGET_SQRT;
    report(
        8,
        "inert-prime p-th powers and sqrt(1 - 25000 z) reconstruction",
        ok,
        format!(
            "{}/{} inert primes are p-th powers matching the target; reconstruction from {:?}: {matching}/{NZ} coefficients match, {stable}/{NZ} stable, {t:.2?}",
            r.inert_passed, r.inert_total, rec.primes
        ),
    );
}

#[test]
fn criterion_09_weak_form() {
    let mut bad = Vec::new();
    let mut checked = 0;
    for spec in bundled() {
        let ps = spec.admissible_primes(20);
        let hol = holomorphic_solution(&spec.op, *ps.last().unwrap() as usize).unwrap();
        for p in ps {
            let c = check_unity(&ap_from_period(&hol, p, p as usize).unwrap(), p as usize);
            checked += 1;
            if !c.weak_form_holds {
                bad.push((spec.id.clone(), p, c.first_deviation));
            }
        }
    }
    report(9, "A_p(z) = 1 + O(z^p)", bad.is_empty(), format!("{checked} (operator, prime) pairs, failures {bad:?}"));
}

#[test]
fn criterion_10_rodland_dual_mum() {
    let op = lookup("rodland").unwrap().op;
    let at_zero = holomorphic_solution(&op, 7).unwrap();
    let (a, at_inf) = period_at_infinity(&op, 7).unwrap();
    let zero_ok = head(&at_zero, 5) == ints(&[1, 5, 109, 3317, 121501]);
    let inf_ok = head(&at_inf, 5) == ints(&[1, 17, 1549, 215585, 36505501]);
    let exps_ok = op.is_mum(Point::Zero) && op.is_mum(Point::Infinity);
    let d = dual_mum_check(&op, 7, 50).unwrap();
    report(
        10,
        "two MUM points: periods and reversed p=7 truncations",
        zero_ok && inf_ok && exps_ok && d.reversal_holds,
        format!(
            "at 0 {}, at inf (exponent {a}) {}, truncations {:?} / {:?}",
            at_zero.format_with("z"),
            at_inf.format_with("w"),
            d.truncation_at_zero,
            d.truncation_at_infinity
        ),
    );
}

#[test]
fn criterion_11_annihilation() {
    let legendre = lookup("legendre").unwrap().op;
    let quintic = lookup("dwork3").unwrap().op;
    let mut bad = Vec::new();
    for p in first_primes(15).into_iter().filter(|&p| p < 50) {
        if p != 2 && !legendre.apply_poly_mod_p(&hw_legendre(p).unwrap()).unwrap().is_zero() {
            bad.push(("legendre", p));
        }
        if p != 5 && !quintic.apply_poly_mod_p(&hw_truncation(&quintic, p).unwrap()).unwrap().is_zero() {
            bad.push(("quintic", p));
        }
    }
    report(11, "operators annihilate their Hasse-Witt polynomials mod p", bad.is_empty(), format!("p < 50, failures {bad:?}"));
}

#[test]
fn criterion_12_dwork_t_coordinates() {
    let mut bad = Vec::new();
    let (t1, t3) = dwork_tcoords(1, 6).unwrap();
    if t1 != ints(&[1, 6, 0, 6, 6, 0]) {
        bad.push(format!("n=1 t1 = {}", t1.format_with("q")));
    }
    // printed in the variable 27z
    let t3 = t3.scale(&Rational::from_i64(27));
    if t3 != ints(&[0, 27, 81, 243, 351, 729]) {
        bad.push(format!("n=1 27*t3 = {} vs printed 27q+81q^2+243q^3+351q^4+729q^5", t3.format_with("q")));
    }
    let (t1, t4) = dwork_tcoords(2, 6).unwrap();
    if t1 != ints(&[1, 24, 24, 96, 24, 144]) {
        bad.push(format!("n=2 t1 = {}", t1.format_with("q")));
    }
    if proportionality(&t4, &ints(&[0, 1, -8, 12, 64, -210])).is_none() {
        bad.push(format!("n=2 t4 = {}", t4.format_with("q")));
    }
    let (t1, t5) = dwork_tcoords(3, 6).unwrap();
    let printed_t1 = QSeries::new(
        hwcy_core::Rationals,
        ["1", "120", "21000", "14115000", "13414125000", "15234972675120"].iter().map(|s| s.parse().unwrap()).collect(),
    );
    if t1 != printed_t1 {
        bad.push(format!("n=3 t1 = {}", t1.format_with("q")));
    }
    let printed_t5 = QSeries::new(
        hwcy_core::Rationals,
        ["0", "1", "-170", "-41475", "-32183000", "-32678171250"].iter().map(|s| s.parse().unwrap()).collect(),
    );
    if t5 != printed_t5 {
        bad.push(format!("n=3 t5 = {}", t5.format_with("q")));
    }
    report(12, "Dwork t-coordinates for n = 1, 2, 3", bad.is_empty(), format!("mismatches {bad:?}"));
}

#[test]
fn criterion_13_property_suites() {
    let suites: Vec<(&str, Result<(), String>)> = vec![
        ("ring axioms over Q", run(qtriple(), ring_axioms_q).map_err(|e| e.to_string())),
        ("ring axioms over F_p", run(fptriple(), ring_axioms_fp).map_err(|e| e.to_string())),
        ("exp/log", run((with_constant(0), with_constant(1)), exp_log_round_trip).map_err(|e| e.to_string())),
        ("compose/revert", run(invertible_for_composition(), compose_revert).map_err(|e| e.to_string())),
        ("sqrt squared", run(with_constant(1), sqrt_squared).map_err(|e| e.to_string())),
        ("CRT vs exhaustive search", run(residues(), crt_round_trip).map_err(|e| e.to_string())),
        ("reconstruction vs exhaustive search", run(reconstruction_case(), reconstruction_round_trip).map_err(|e| e.to_string())),
    ];
    let failed: Vec<_> = suites.iter().filter(|(_, r)| r.is_err()).collect();
    report(
        13,
        "seeded property suites",
        failed.is_empty(),
        format!("{} suites x {CASES} cases, failures {failed:?}", suites.len()),
    );
}

#[test]
fn supplementary_sqrt_reconstruction_with_all_inert_primes() {
    // every inert prime among the first 40, so the modulus is large enough
    // for the leading coefficients
    const NZ: usize = 30;
    let op = lookup("ell").unwrap().op;
    let inert: Vec<u64> = first_primes(40).into_iter().filter(|&p| inert_in_q_sqrt_m5(p)).collect();
    let r = sqrt_conjecture_check(&op, &inert, NZ).unwrap();
    assert!(r.passed());
    let samples = r.inert_samples();
    assert!(samples.len() >= 12);
    let rec = crt_reconstruct_series(&samples, NZ).unwrap();
    let target = sqrt_target(NZ).unwrap();
    let k = rec.stable_prefix();
    for i in 0..NZ {
        if rec.stable[i] {
            assert_eq!(rec.coeffs[i].as_ref(), Some(target.coeff(i)), "stable coefficient {i}");
        }
    }
    println!("supplementary: {} inert primes, stable prefix {k}/{NZ}", samples.len());
    assert!(k >= 3);
    // each reduction agrees with the target to full order
    let f = PrimeField::new(samples[0].0).unwrap();
    assert_eq!(samples[0].1.truncate(NZ), target.reduce_mod_p(f).unwrap());
}
