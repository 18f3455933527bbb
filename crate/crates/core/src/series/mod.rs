//! Truncated power series over an abstract coefficient ring.
//!
//! A series `c_0 + c_1 z + ... + c_{N-1} z^{N-1} + O(z^N)` stores exactly `N`
//! coefficients; `N` is its precision. Binary operations return the smaller
//! of the two precisions and never extend silently.

mod puiseux;

pub use puiseux::PuiseuxSeries;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{PrimeField, Rational, Rationals, Ring};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

pub type QSeries = TruncatedSeries<Rationals>;
pub type FpSeries = TruncatedSeries<PrimeField>;

impl<R: Ring> TruncatedSeries<R> {
    /// Series whose precision is the number of coefficients given.
    pub fn new(ring: R, coeffs: Vec<R::Elem>) -> Self {
        assert!(!coeffs.is_empty(), "precision must be positive");
        TruncatedSeries { ring, coeffs }
    }

    /// Copy `coeffs` into a series of precision `n`, padding with zeros or
    /// dropping the tail.
    pub fn from_slice(ring: R, coeffs: &[R::Elem], n: usize) -> Self {
        let mut v: Vec<R::Elem> = coeffs.iter().take(n).cloned().collect();
        v.resize(n, ring.zero());
        Self::new(ring, v)
    }

    pub fn zero(ring: R, n: usize) -> Self {
        let z = ring.zero();
        Self::new(ring, vec![z; n])
    }

    pub fn one(ring: R, n: usize) -> Self {
        Self::monomial(ring.clone(), ring.one(), 0, n)
    }

    /// The series `z`.
    pub fn var(ring: R, n: usize) -> Self {
        Self::monomial(ring.clone(), ring.one(), 1, n)
    }

    pub fn monomial(ring: R, c: R::Elem, k: usize, n: usize) -> Self {
        let mut s = Self::zero(ring, n);
        if k < n {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R::Elem> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &R::Elem {
        &self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, c: R::Elem) {
        self.coeffs[k] = c;
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.ring.is_zero(c))
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn truncate(&self, n: usize) -> Self {
        assert!(n <= self.precision(), "cannot raise precision by truncation");
        Self::new(self.ring.clone(), self.coeffs[..n].to_vec())
    }

    fn check_ring(&self, other: &Self) {
        assert_eq!(self.ring, other.ring, "series over different rings");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ring(other);
        let n = self.precision().min(other.precision());
        let v = (0..n).map(|i| self.ring.add(&self.coeffs[i], &other.coeffs[i])).collect();
        Self::new(self.ring.clone(), v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_ring(other);
        let n = self.precision().min(other.precision());
        let v = (0..n).map(|i| self.ring.sub(&self.coeffs[i], &other.coeffs[i])).collect();
        Self::new(self.ring.clone(), v)
    }

    pub fn neg(&self) -> Self {
        let v = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        Self::new(self.ring.clone(), v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ring(other);
        let n = self.precision().min(other.precision());
        Self::new(self.ring.clone(), self.ring.convolve(&self.coeffs, &other.coeffs, n))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let v = self.coeffs.iter().map(|x| self.ring.mul(x, c)).collect();
        Self::new(self.ring.clone(), v)
    }

    /// Multiply by `z^k`, keeping the precision.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.precision();
        let mut v = vec![self.ring.zero(); k.min(n)];
        v.extend(self.coeffs.iter().take(n.saturating_sub(k)).cloned());
        Self::new(self.ring.clone(), v)
    }

    /// `f(z^m)`, precision unchanged.
    pub fn dilate(&self, m: usize) -> Self {
        assert!(m >= 1);
        let n = self.precision();
        let mut v = vec![self.ring.zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * m >= n {
                break;
            }
            v[i * m] = c.clone();
        }
        Self::new(self.ring.clone(), v)
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let r = &self.ring;
        let inv0 = r.inv(&self.coeffs[0]).ok_or(Error::SingularSeries)?;
        let n = self.precision();
        let mut out = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = r.zero();
            for j in 1..=k {
                if r.is_zero(&self.coeffs[j]) {
                    continue;
                }
                acc = r.add(&acc, &r.mul(&self.coeffs[j], &out[k - j]));
            }
            out.push(r.neg(&r.mul(&acc, &inv0)));
        }
        Ok(Self::new(r.clone(), out))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// `d/dz`; the result is known to one order less.
    pub fn derivative(&self) -> Self {
        let n = self.precision();
        if n == 1 {
            return Self::zero(self.ring.clone(), 1);
        }
        let v = (1..n).map(|k| self.ring.mul_i64(&self.coeffs[k], k as i64)).collect();
        Self::new(self.ring.clone(), v)
    }

    /// Derivative padded with a zero top coefficient so the precision is kept.
    fn derivative_padded(&self) -> Self {
        let n = self.precision();
        let mut d = self.derivative().into_coeffs();
        d.resize(n, self.ring.zero());
        Self::new(self.ring.clone(), d)
    }

    /// `theta = z d/dz`.
    pub fn theta(&self) -> Self {
        let v = self.coeffs.iter().enumerate().map(|(k, c)| self.ring.mul_i64(c, k as i64)).collect();
        Self::new(self.ring.clone(), v)
    }

    fn inv_index(&self, k: usize) -> Result<R::Elem> {
        self.ring.inv(&self.ring.integer(k as i64)).ok_or(Error::Integrality { index: k, prime: self.ring.characteristic() })
    }

    /// `exp(f)` for `f(0) = 0`, from `(exp f)' = f' exp f` term by term.
    pub fn exp(&self) -> Result<Self> {
        let r = &self.ring;
        if !r.is_zero(&self.coeffs[0]) {
            return Err(Error::Domain("exp requires zero constant term".into()));
        }
        let n = self.precision();
        let jf: Vec<R::Elem> = self.coeffs.iter().enumerate().map(|(j, c)| r.mul_i64(c, j as i64)).collect();
        let mut e = vec![r.one()];
        for k in 1..n {
            let mut acc = r.zero();
            for j in 1..=k {
                if r.is_zero(&jf[j]) {
                    continue;
                }
                acc = r.add(&acc, &r.mul(&jf[j], &e[k - j]));
            }
            e.push(r.mul(&acc, &self.inv_index(k)?));
        }
        Ok(Self::new(r.clone(), e))
    }

    /// `log(f)` for `f(0) = 1`, by integrating `f'/f`.
    pub fn log(&self) -> Result<Self> {
        let r = &self.ring;
        if !r.is_one(&self.coeffs[0]) {
            return Err(Error::Domain("log requires constant term 1".into()));
        }
        let n = self.precision();
        // k g_k = k f_k - sum_{j=1}^{k-1} j g_j f_{k-j}
        let mut g = vec![r.zero()];
        let mut jg: Vec<R::Elem> = vec![r.zero()];
        for k in 1..n {
            let mut acc = r.mul_i64(&self.coeffs[k], k as i64);
            for (j, jgj) in jg.iter().enumerate().take(k).skip(1) {
                if r.is_zero(jgj) || r.is_zero(&self.coeffs[k - j]) {
                    continue;
                }
                acc = r.sub(&acc, &r.mul(jgj, &self.coeffs[k - j]));
            }
            jg.push(acc.clone());
            g.push(r.mul(&acc, &self.inv_index(k)?));
        }
        Ok(Self::new(r.clone(), g))
    }

    /// `f^e` for a non-negative integer exponent, by binary exponentiation.
    pub fn pow_u64(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.ring.clone(), self.precision());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `f^e` for any integer exponent; negative powers need a unit constant term.
    pub fn pow_i64(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow_u64(e as u64))
        } else {
            Ok(self.inverse()?.pow_u64(e.unsigned_abs()))
        }
    }

    /// `f(g)` by Horner's rule; requires `g(0) = 0`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        self.check_ring(g);
        if !self.ring.is_zero(&g.coeffs[0]) {
            return Err(Error::Domain("inner series must have zero constant term".into()));
        }
        let n = self.precision().min(g.precision());
        let g = g.truncate(n);
        let mut acc = Self::monomial(self.ring.clone(), self.coeffs[n - 1].clone(), 0, n);
        for i in (0..n - 1).rev() {
            acc = acc.mul(&g);
            acc.coeffs[0] = self.ring.add(&acc.coeffs[0], &self.coeffs[i]);
        }
        Ok(acc)
    }

    /// Compositional inverse `g` with `f(g(q)) = q + O(q^N)`, by Newton
    /// iteration `g <- g - (f(g) - q) / f'(g)` with doubling precision.
    pub fn revert(&self) -> Result<Self> {
        let r = &self.ring;
        let n = self.precision();
        if !r.is_zero(&self.coeffs[0]) {
            return Err(Error::Domain("reversion requires zero constant term".into()));
        }
        if n < 2 {
            return Ok(Self::zero(r.clone(), n));
        }
        let lead_inv = r.inv(&self.coeffs[1]).ok_or_else(|| Error::Domain("linear coefficient is not invertible".into()))?;
        let mut g = Self::monomial(r.clone(), lead_inv, 1, 2);
        let df = self.derivative_padded();
        let mut m = 2;
        while m < n {
            m = (2 * m).min(n);
            let g_m = Self::from_slice(r.clone(), &g.coeffs, m);
            let f_m = self.truncate(m);
            let resid = f_m.compose(&g_m)?.sub(&Self::var(r.clone(), m));
            let slope = df.truncate(m).compose(&g_m)?;
            g = g_m.sub(&resid.div(&slope)?);
        }
        Ok(Self::from_slice(r.clone(), &g.coeffs, n))
    }

    /// Render as `c0+c1*z+...+O(z^N)` with no spaces.
    pub fn format_with(&self, var: &str) -> String {
        format_terms(self.coeffs.iter().map(|c| c.to_string()), var, Some(self.precision()))
    }
}

/// Shared renderer for series and polynomials: `1-5*z+z^3+O(z^4)`.
pub fn format_terms(coeffs: impl Iterator<Item = String>, var: &str, order: Option<usize>) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.enumerate() {
        if c == "0" {
            continue;
        }
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, c.clone()),
        };
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if k == 0 {
            out.push_str(&mag);
        } else if mag == "1" {
            out.push_str(&mono);
        } else {
            out.push_str(&mag);
            out.push('*');
            out.push_str(&mono);
        }
    }
    if let Some(n) = order {
        if !out.is_empty() {
            out.push('+');
        }
        out.push_str(&format!("O({var}^{n})"));
    } else if out.is_empty() {
        out.push('0');
    }
    out
}

impl<R: Ring> fmt::Display for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("z"))
    }
}

impl<R: Ring> fmt::Debug for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl QSeries {
    /// Series over Q from integer coefficients.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(Rationals, coeffs.iter().map(|&c| Rational::from_i64(c)).collect())
    }

    /// `f^e` for rational `e`: binary powering for integers, otherwise
    /// `exp(e log f)` with `f(0) = 1`.
    pub fn pow_rational(&self, e: &Rational) -> Result<Self> {
        if let Some(k) = e.to_i64() {
            return self.pow_i64(k);
        }
        self.log()?.scale(e).exp()
    }

    pub fn sqrt(&self) -> Result<Self> {
        self.pow_rational(&Rational::frac(1, 2))
    }

    /// Termwise reduction into F_p; fails at the first coefficient whose
    /// denominator is divisible by `p`.
    pub fn reduce_mod_p(&self, field: PrimeField) -> Result<FpSeries> {
        let p = field.p();
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.mod_p(p).ok_or(Error::Integrality { index: i, prime: p }))
            .collect::<Result<Vec<u64>>>()?;
        Ok(FpSeries::new(field, v))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl<R: Ring> TruncatedSeries<R> {
    /// Apply an exponent to a series over a prime field: `f^e` with `e`
    /// rational is only defined in characteristic zero.
    pub fn pow_rational_checked(&self, num: i64, den: i64) -> Result<Self> {
        if den == 1 {
            return self.pow_i64(num);
        }
        Err(Error::Rejected(format!("fractional power {num}/{den} in characteristic {}", self.ring.characteristic())))
    }
}

impl FpSeries {
    pub fn from_u64s(field: PrimeField, coeffs: &[u64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| c % field.p()).collect())
    }

    pub fn field(&self) -> PrimeField {
        *self.ring()
    }

    /// `f(z)^p = f(z^p)` in characteristic p.
    pub fn frobenius(&self) -> Self {
        self.dilate(self.field().p() as usize)
    }
}

macro_rules! series_ops {
    ($tr:ident, $m:ident) => {
        impl<'a, R: Ring> $tr<&'a TruncatedSeries<R>> for &'a TruncatedSeries<R> {
            type Output = TruncatedSeries<R>;
            fn $m(self, rhs: &TruncatedSeries<R>) -> TruncatedSeries<R> {
                TruncatedSeries::$m(self, rhs)
            }
        }
    };
}

series_ops!(Add, add);
series_ops!(Sub, sub);
series_ops!(Mul, mul);

impl<R: Ring> Neg for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn neg(self) -> TruncatedSeries<R> {
        TruncatedSeries::neg(self)
    }
}
