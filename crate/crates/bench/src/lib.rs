//! Seeded inputs for the kernel benchmarks.

pub use hwcy_core;

use hwcy_core::{FpSeries, PrimeField, QSeries, Rational, Rationals};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Series over Q with constant term 1 and small random fractions elsewhere.
pub fn qseries(n: usize, seed: u64) -> QSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c: Vec<Rational> = (0..n).map(|_| Rational::frac(rng.gen_range(-99..=99), rng.gen_range(1..=9))).collect();
    c[0] = Rational::one();
    QSeries::new(Rationals, c)
}

/// Series over F_p with constant term 1 and uniform coefficients elsewhere.
pub fn fpseries(p: u64, n: usize, seed: u64) -> FpSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
    c[0] = 1;
    FpSeries::from_u64s(PrimeField::new(p).expect("prime"), &c)
}
