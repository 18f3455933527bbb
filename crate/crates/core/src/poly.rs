//! Dense univariate polynomials over a coefficient ring.

use std::fmt;

use crate::arith::{Rational, Rationals, Ring};
use crate::error::{Error, Result};
use crate::series::format_terms;

/// Coefficients in ascending degree; no trailing zeros are stored, so the
/// zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq)]
pub struct Poly<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

pub type QPoly = Poly<Rationals>;

impl<R: Ring> Poly<R> {
    pub fn new(ring: R, coeffs: Vec<R::Elem>) -> Self {
        let mut p = Poly { ring, coeffs };
        p.trim();
        p
    }

    pub fn zero(ring: R) -> Self {
        Poly { ring, coeffs: Vec::new() }
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        Poly::new(ring, vec![c])
    }

    /// The polynomial `x`.
    pub fn x(ring: R) -> Self {
        let c = vec![ring.zero(), ring.one()];
        Poly::new(ring, c)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.ring.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> R::Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R::Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| self.ring.add(&self.coeff(i), &other.coeff(i))).collect();
        Poly::new(self.ring.clone(), v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| self.ring.sub(&self.coeff(i), &other.coeff(i))).collect();
        Poly::new(self.ring.clone(), v)
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.ring.clone(), self.coeffs.iter().map(|c| self.ring.neg(c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.ring.clone());
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        Poly::new(self.ring.clone(), self.ring.convolve(&self.coeffs, &other.coeffs, n))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        Poly::new(self.ring.clone(), self.coeffs.iter().map(|x| self.ring.mul(x, c)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::constant(self.ring.clone(), self.ring.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &R::Elem) -> R::Elem {
        let mut acc = self.ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = self.ring.add(&self.ring.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let v = self.coeffs.iter().enumerate().skip(1).map(|(k, c)| self.ring.mul_i64(c, k as i64)).collect();
        Poly::new(self.ring.clone(), v)
    }

    /// `P(x + c)` by repeated synthetic division (Taylor shift).
    pub fn shift(&self, c: &R::Elem) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = self.ring.mul(&a[j + 1], c);
                a[j] = self.ring.add(&a[j], &t);
            }
        }
        Poly::new(self.ring.clone(), a)
    }

    /// `P(-x)`.
    pub fn reflect(&self) -> Self {
        let v = self.coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 1 { self.ring.neg(c) } else { c.clone() }).collect();
        Poly::new(self.ring.clone(), v)
    }

    /// Division with remainder; the divisor's leading coefficient must be a unit.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let r = &self.ring;
        let dl = d.leading().ok_or(Error::Domain("division by the zero polynomial".into()))?;
        let dinv = r.inv(dl).ok_or(Error::Domain("divisor leading coefficient is not a unit".into()))?;
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(r.clone()), self.clone()));
        }
        let mut quo = vec![r.zero(); rem.len() - dd];
        for i in (0..quo.len()).rev() {
            let c = r.mul(&rem[i + dd], &dinv);
            if r.is_zero(&c) {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = r.sub(&rem[i + j], &r.mul(&c, dc));
            }
            quo[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(r.clone(), quo), Poly::new(r.clone(), rem)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem(d)?.1)
    }

    /// Scale to leading coefficient one (field coefficients).
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&self.ring.inv(l).expect("leading coefficient is a unit")),
        }
    }

    /// Monic gcd over a field.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("field coefficients");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn format_with(&self, var: &str) -> String {
        format_terms(self.coeffs.iter().map(|c| c.to_string()), var, None)
    }
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("x"))
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl QPoly {
    pub fn from_i64s(c: &[i64]) -> Self {
        Poly::new(Rationals, c.iter().map(|&x| Rational::from_i64(x)).collect())
    }

    pub fn eval_i64(&self, x: i64) -> Rational {
        self.eval(&Rational::from_i64(x))
    }

    /// Rational roots with multiplicity, in ascending order, by searching
    /// `+-a/b` with `a | c_0'` and `b | c_n` after clearing denominators.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut roots = Vec::new();
        let mut p = self.clone();
        if p.is_zero() {
            return roots;
        }
        // x = 0 roots
        while p.coeffs.first().is_some_and(|c| c.is_zero()) {
            roots.push(Rational::zero());
            p = Poly::new(Rationals, p.coeffs[1..].to_vec());
        }
        if p.degree().unwrap_or(0) == 0 {
            return roots;
        }
        for r in squarefree_rational_roots(&p.monic()) {
            let lin = Poly::new(Rationals, vec![-&r, Rational::one()]);
            loop {
                let (q, rem) = p.div_rem(&lin).unwrap();
                if !rem.is_zero() {
                    break;
                }
                roots.push(r.clone());
                p = q;
            }
        }
        roots.sort();
        roots
    }
}

/// Integer multiples of a rational coefficient list with the same ratios.
pub fn clear_denominators(c: &[Rational]) -> Vec<num_bigint::BigInt> {
    use num_integer::Integer;
    let mut l = num_bigint::BigInt::from(1);
    for x in c {
        l = l.lcm(x.denom());
    }
    c.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Distinct rational roots of a monic rational polynomial with nonzero
/// constant term: roots of the squarefree part modulo a good prime are
/// Hensel-lifted until rational reconstruction is unambiguous, then checked
/// exactly. Every root `a/b` in lowest terms has `|a| <= |c_0|` and
/// `b <= |c_n|` for the primitive integer form.
fn squarefree_rational_roots(p: &QPoly) -> Vec<Rational> {
    use crate::arith::{is_prime, rational_reconstruction, PrimeField};
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{Signed, Zero};

    let sf = p.div_rem(&p.gcd(&p.derivative())).unwrap().0;
    let mut ints = clear_denominators(sf.coeffs());
    let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    ints.iter_mut().for_each(|c| *c /= &content);
    let bound = ints[0].abs().max(ints.last().unwrap().abs());
    let eval_mod =
        |x: &BigInt, m: &BigInt, c: &[BigInt]| c.iter().rev().fold(BigInt::zero(), |acc, k| (acc * x + k).mod_floor(m));
    let deriv: Vec<BigInt> = ints.iter().enumerate().skip(1).map(|(i, c)| c * i).collect();

    // a prime not dividing the leading coefficient that keeps sf squarefree
    let prime = (3u64..)
        .filter(|&q| is_prime(q))
        .find(|&q| {
            let qb = BigInt::from(q);
            if (ints.last().unwrap() % &qb).is_zero() {
                return false;
            }
            let f = PrimeField::new(q).unwrap();
            let red = |c: &[BigInt]| Poly::new(f, c.iter().map(|x| x.mod_floor(&qb).try_into().unwrap()).collect());
            let (a, b) = (red(&ints), red(&deriv));
            a.gcd(&b).degree() == Some(0)
        })
        .expect("some prime is good");
    let qb = BigInt::from(prime);
    let target = 2 * &bound * &bound;

    let mut out = Vec::new();
    for r0 in 0..prime {
        let r0 = BigInt::from(r0);
        if !eval_mod(&r0, &qb, &ints).is_zero() {
            continue;
        }
        // Newton iteration in Z/q^(2^k)
        let (mut r, mut m) = (r0, qb.clone());
        while m <= target {
            m = &m * &m;
            let d = eval_mod(&r, &m, &deriv);
            let dinv = d.extended_gcd(&m).x.mod_floor(&m);
            r = (&r - eval_mod(&r, &m, &ints) * dinv).mod_floor(&m);
        }
        if let Some(c) = rational_reconstruction(&r, &m) {
            if sf.eval(&c).is_zero() {
                out.push(c);
            }
        }
    }
    out
}
