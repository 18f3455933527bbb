use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::primes::is_prime;
use crate::error::{Error, Result};

/// Largest admissible modulus; keeps every product inside a `u64`.
pub const MAX_MODULUS: u64 = 1 << 32;

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc: u128 = 1 % m128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// The prime field F_p as a coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Rejected(format!("{p} is not prime")));
        }
        if p >= MAX_MODULUS {
            return Err(Error::Rejected(format!("modulus {p} exceeds 2^32")));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> PrimeFieldElem {
        PrimeFieldElem { value: v.rem_euclid(self.p as i64) as u64, p: self.p }
    }
}

/// A standalone element of F_p carrying its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeFieldElem {
    value: u64,
    p: u64,
}

impl PrimeFieldElem {
    pub fn new(value: u64, p: u64) -> Result<Self> {
        PrimeField::new(p)?;
        Ok(PrimeFieldElem { value: value % p, p })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn inverse(&self) -> Option<Self> {
        mod_inverse(self.value, self.p).map(|value| PrimeFieldElem { value, p: self.p })
    }

    pub fn pow(&self, e: u64) -> Self {
        PrimeFieldElem { value: mod_pow(self.value, e, self.p), p: self.p }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixed moduli");
    }
}

impl fmt::Debug for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl fmt::Display for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for PrimeFieldElem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        PrimeFieldElem { value: (self.value + rhs.value) % self.p, p: self.p }
    }
}

impl Sub for PrimeFieldElem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.check(&rhs);
        PrimeFieldElem { value: (self.value + self.p - rhs.value) % self.p, p: self.p }
    }
}

impl Mul for PrimeFieldElem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        PrimeFieldElem { value: self.value * rhs.value % self.p, p: self.p }
    }
}

impl Neg for PrimeFieldElem {
    type Output = Self;
    fn neg(self) -> Self {
        PrimeFieldElem { value: (self.p - self.value) % self.p, p: self.p }
    }
}
