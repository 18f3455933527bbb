use std::fmt::{Debug, Display};

use super::field::{mod_inverse, PrimeField};
use super::rational::Rational;

/// A coefficient domain. The ring value carries whatever context the elements
/// need (the modulus, for prime fields), so elements themselves stay small.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + Display + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn integer(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for non-units.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;

    fn mul_i64(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        self.mul(a, &self.integer(k))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Truncated product of two coefficient slices: the first `n` terms of
    /// their convolution.
    fn convolve(&self, a: &[Self::Elem], b: &[Self::Elem], n: usize) -> Vec<Self::Elem> {
        convolve_naive(self, a, b, n)
    }
}

/// Schoolbook truncated convolution. Reference path for every ring.
pub fn convolve_naive<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem], n: usize) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); n];
    for (i, ai) in a.iter().enumerate().take(n) {
        if ring.is_zero(ai) {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            if ring.is_zero(bj) {
                continue;
            }
            let t = ring.mul(ai, bj);
            out[i + j] = ring.add(&out[i + j], &t);
        }
    }
    out
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn integer(&self, v: i64) -> Rational {
        Rational::from_i64(v)
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        a.recip()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn mul_i64(&self, a: &Rational, k: i64) -> Rational {
        a.mul_i64(k)
    }
    fn is_one(&self, a: &Rational) -> bool {
        a.is_one()
    }
    fn convolve(&self, a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n];
        for (i, ai) in a.iter().enumerate().take(n) {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate().take(n - i) {
                if bj.is_zero() {
                    continue;
                }
                out[i + j] += &(ai * bj);
            }
        }
        out
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p()
    }
    fn integer(&self, v: i64) -> u64 {
        v.rem_euclid(self.p() as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p() {
            s - self.p()
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p() - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p() - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p()
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        mod_inverse(*a, self.p())
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p()
    }

    /// Delayed-reduction kernel: products fit in 64 bits because `p < 2^32`,
    /// so we accumulate in 128 bits and reduce once per output coefficient.
    fn convolve(&self, a: &[u64], b: &[u64], n: usize) -> Vec<u64> {
        let p = self.p() as u128;
        let mut out = vec![0u64; n];
        for (k, slot) in out.iter_mut().enumerate() {
            let lo = k.saturating_sub(b.len().saturating_sub(1));
            let hi = k.min(a.len().saturating_sub(1));
            if a.is_empty() || b.is_empty() || lo > hi {
                continue;
            }
            let mut acc: u128 = 0;
            for i in lo..=hi {
                acc += (a[i] * b[k - i]) as u128;
            }
            *slot = (acc % p) as u64;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_kernel_matches_naive() {
        let f = PrimeField::new(1223).unwrap();
        let a: Vec<u64> = (0..40).map(|i| (i * i * 37 + 5) % 1223).collect();
        let b: Vec<u64> = (0..25).map(|i| (i * 911 + 2) % 1223).collect();
        for n in [1, 10, 40, 70] {
            assert_eq!(f.convolve(&a, &b, n), convolve_naive(&f, &a, &b, n));
        }
    }
}
