//! Property kernels and strategies shared by the property suites and the
//! acceptance target.
#![allow(dead_code)]

use hwcy_core::arith::{crt_combine, mod_inverse, rational_reconstruction, reconstruction_bound};
use hwcy_core::{FpSeries, PrimeField, QSeries, Rational, Rationals};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

pub const CASES: u32 = 1000;
pub const SMALL_PRIMES: &[u64] = &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

pub fn fixture(name: &str) -> Vec<(u64, String)> {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{path}: {e}"))
        .lines()
        .map(|l| {
            let (p, s) = l.split_once('\t').expect("tab-separated fixture");
            (p.parse().expect("prime"), s.to_string())
        })
        .collect()
}

/// Seeded runner: same cases on every run.
pub fn runner() -> TestRunner {
    TestRunner::new_with_rng(Config { cases: CASES, ..Config::default() }, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

pub fn run<S: Strategy>(s: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), TestError<S::Value>> {
    runner().run(&s, test)
}

// ---- strategies ----

pub fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=6).prop_map(|(n, d)| Rational::frac(n, d))
}

pub fn qseries(n: usize) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(rational(), n).prop_map(|c| QSeries::new(Rationals, c))
}

/// Three series of a common random precision.
pub fn qtriple() -> impl Strategy<Value = (QSeries, QSeries, QSeries)> {
    (1usize..10).prop_flat_map(|n| (qseries(n), qseries(n), qseries(n)))
}

pub fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 101, 65521, 2147483647])
}

pub fn fpseries(p: u64, n: usize) -> impl Strategy<Value = FpSeries> {
    prop::collection::vec(0..p, n).prop_map(move |c| FpSeries::from_u64s(PrimeField::new(p).unwrap(), &c))
}

pub fn fptriple() -> impl Strategy<Value = (FpSeries, FpSeries, FpSeries)> {
    (prime(), 1usize..16).prop_flat_map(|(p, n)| (fpseries(p, n), fpseries(p, n), fpseries(p, n)))
}

/// A series with the given constant term.
pub fn with_constant(c: i64) -> impl Strategy<Value = QSeries> {
    (2usize..9).prop_flat_map(qseries).prop_map(move |s| {
        let mut s = s;
        s.set_coeff(0, Rational::from_i64(c));
        s
    })
}

/// `q + a₂q² + ...`.
pub fn invertible_for_composition() -> impl Strategy<Value = QSeries> {
    (2usize..9, rational().prop_filter("nonzero", |r| !r.is_zero())).prop_flat_map(|(n, lead)| (qseries(n), Just(lead))).prop_map(
        |(s, lead)| {
            let mut s = s;
            s.set_coeff(0, Rational::zero());
            s.set_coeff(1, lead);
            s
        },
    )
}

/// Residues modulo 1–3 distinct small primes.
pub fn residues() -> impl Strategy<Value = Vec<(i64, u64)>> {
    prop::sample::subsequence(SMALL_PRIMES.to_vec(), 1..=3)
        .prop_flat_map(|ps| ps.into_iter().map(|p| (0..p as i64, Just(p))).collect::<Vec<_>>())
}

/// A product of 1–3 distinct small primes and a candidate fraction.
pub fn reconstruction_case() -> impl Strategy<Value = (u64, i64, i64)> {
    prop::sample::subsequence(SMALL_PRIMES.to_vec(), 1..=3)
        .prop_map(|ps| ps.iter().product::<u64>())
        .prop_flat_map(|m| (Just(m), -60i64..=60, 1i64..=60))
}

// ---- properties ----

pub fn ring_axioms_q((a, b, c): (QSeries, QSeries, QSeries)) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    prop_assert_eq!(a.add(&b), b.add(&a));
    prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    prop_assert_eq!(a.mul(&b), b.mul(&a));
    prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    prop_assert!(a.sub(&a).is_zero());
    Ok(())
}

pub fn ring_axioms_fp((a, b, c): (FpSeries, FpSeries, FpSeries)) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    prop_assert_eq!(a.mul(&b), b.mul(&a));
    prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    prop_assert!(a.add(&a.neg()).is_zero());
    Ok(())
}

/// `log(exp f) = f` for `f(0) = 0`, `exp(log g) = g` and `(log g)' = g'/g` for `g(0) = 1`.
pub fn exp_log_round_trip((f, g): (QSeries, QSeries)) -> Result<(), TestCaseError> {
    prop_assert_eq!(f.exp().unwrap().log().unwrap(), f.clone());
    prop_assert_eq!(g.log().unwrap().exp().unwrap(), g.clone());
    let lhs = g.log().unwrap().derivative();
    let rhs = g.derivative().mul(&g.inverse().unwrap());
    prop_assert_eq!(lhs.coeffs(), &rhs.coeffs()[..lhs.precision()]);
    Ok(())
}

pub fn compose_revert(f: QSeries) -> Result<(), TestCaseError> {
    let n = f.precision();
    let q = QSeries::var(Rationals, n);
    let g = f.revert().unwrap();
    prop_assert_eq!(f.compose(&g).unwrap(), q.clone());
    prop_assert_eq!(g.compose(&f).unwrap(), q);
    Ok(())
}

/// `sqrt(g)² = g` and `sqrt(h²) = h` for constant term 1.
pub fn sqrt_squared(g: QSeries) -> Result<(), TestCaseError> {
    let r = g.sqrt().unwrap();
    prop_assert_eq!(r.mul(&r), g.clone());
    prop_assert_eq!(g.mul(&g).sqrt().unwrap(), g);
    Ok(())
}

/// CRT against exhaustive search over `[0, M)`.
pub fn crt_round_trip(res: Vec<(i64, u64)>) -> Result<(), TestCaseError> {
    let input: Vec<(BigInt, u64)> = res.iter().map(|&(r, p)| (BigInt::from(r), p)).collect();
    let (r, m) = crt_combine(&input).unwrap();
    let m_u: u64 = res.iter().map(|&(_, p)| p).product();
    prop_assert_eq!(m.clone(), BigInt::from(m_u));
    let oracle = (0..m_u).find(|x| res.iter().all(|&(r, p)| x % p == r as u64)).unwrap();
    prop_assert_eq!(r.clone(), BigInt::from(oracle));
    for &(ri, p) in &res {
        prop_assert_eq!(r.mod_floor(&BigInt::from(p)), BigInt::from(ri));
    }
    Ok(())
}

/// Rational reconstruction against exhaustive search over all fractions
/// within the bound.
pub fn reconstruction_round_trip((m, n, d): (u64, i64, i64)) -> Result<(), TestCaseError> {
    let mb = BigInt::from(m);
    let bound: i64 = reconstruction_bound(&mb).try_into().unwrap();
    let Some(dinv) = mod_inverse(d as u64 % m, m) else { return Ok(()) };
    let r = (n.rem_euclid(m as i64) as u128 * dinv as u128 % m as u128) as i64;
    let got = rational_reconstruction(&BigInt::from(r), &mb);
    let oracle: Vec<Rational> = (1..=bound)
        .flat_map(|dd| (-bound..=bound).map(move |nn| (nn, dd)))
        .filter(|&(nn, dd)| nn.gcd(&dd) == 1 && (nn - r * dd).rem_euclid(m as i64) == 0)
        .map(|(nn, dd)| Rational::frac(nn, dd))
        .collect();
    // for M = 2 the bound is 1 and 1 ≡ -1, the only ambiguous case
    prop_assert!(oracle.len() <= 1 || m == 2);
    if n.abs() <= bound && d <= bound && n.gcd(&d) == 1 {
        prop_assert!(oracle.contains(&Rational::frac(n, d)));
        if oracle.len() == 1 {
            prop_assert_eq!(got.clone(), Some(Rational::frac(n, d)));
        }
    }
    if let Some(x) = &got {
        prop_assert!(oracle.contains(x));
    }
    Ok(())
}
