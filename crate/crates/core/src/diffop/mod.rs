//! Linear differential operators in `z` and `θ = z d/dz`.
//!
//! An operator is stored as its theta slices: `L = Σ_j z^j P_j(θ)`. Products
//! are normal-ordered with `θ^i z^j = z^j (θ + j)^i`, so a slice list is a
//! canonical form and two operators are equal iff their slices are.

mod parse;
mod solve;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{PrimeField, Rational, Rationals, Ring};
use crate::error::{Error, Result};
use crate::poly::{Poly, QPoly};
use crate::series::TruncatedSeries;

pub use parse::parse_weyl;
pub use solve::{frobenius_pair, holomorphic_solution, log_companion, mirror_map, period_at_infinity, MirrorData};

#[derive(Clone, PartialEq)]
pub struct WeylOperator {
    /// `slices[j] = P_j`; no trailing zero slices.
    slices: Vec<QPoly>,
}

/// Where to read off local exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Point {
    Zero,
    Infinity,
}

impl WeylOperator {
    pub fn from_slices(slices: Vec<QPoly>) -> Self {
        let mut op = WeylOperator { slices };
        while op.slices.last().is_some_and(|p| p.is_zero()) {
            op.slices.pop();
        }
        op
    }

    /// Build from coefficient lists indexed by θ-power, each listing the
    /// coefficients of `z^0, z^1, ...` (the database layout).
    pub fn from_theta_powers(rows: &[Vec<Rational>]) -> Self {
        let span = rows.iter().map(|r| r.len()).max().unwrap_or(0);
        let slices = (0..span)
            .map(|j| Poly::new(Rationals, rows.iter().map(|r| r.get(j).cloned().unwrap_or_else(Rational::zero)).collect()))
            .collect();
        WeylOperator::from_slices(slices)
    }

    pub fn zero() -> Self {
        WeylOperator { slices: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        WeylOperator::from_slices(vec![Poly::constant(Rationals, c)])
    }

    pub fn z() -> Self {
        WeylOperator::from_slices(vec![Poly::zero(Rationals), Poly::constant(Rationals, Rational::one())])
    }

    pub fn theta() -> Self {
        WeylOperator::from_slices(vec![Poly::x(Rationals)])
    }

    pub fn is_zero(&self) -> bool {
        self.slices.is_empty()
    }

    pub fn slices(&self) -> &[QPoly] {
        &self.slices
    }

    /// `P_j`, zero beyond the z-span.
    pub fn slice(&self, j: usize) -> QPoly {
        self.slices.get(j).cloned().unwrap_or_else(|| Poly::zero(Rationals))
    }

    /// Highest θ-power.
    pub fn order(&self) -> usize {
        self.slices.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    /// Highest z-power `J`.
    pub fn z_span(&self) -> usize {
        self.slices.len().saturating_sub(1)
    }

    /// Nonzero coefficients keyed by `(z-degree, θ-degree)`.
    pub fn terms(&self) -> BTreeMap<(usize, usize), Rational> {
        let mut m = BTreeMap::new();
        for (j, p) in self.slices.iter().enumerate() {
            for (i, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    m.insert((j, i), c.clone());
                }
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.slices.len().max(other.slices.len());
        WeylOperator::from_slices((0..n).map(|j| self.slice(j).add(&other.slice(j))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        WeylOperator::from_slices(self.slices.iter().map(|p| p.neg()).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        WeylOperator::from_slices(self.slices.iter().map(|p| p.scale(c)).collect())
    }

    /// Normal-ordered product: `z^a P(θ) · z^b Q(θ) = z^(a+b) P(θ+b) Q(θ)`.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return WeylOperator::zero();
        }
        let mut out = vec![Poly::zero(Rationals); self.slices.len() + other.slices.len() - 1];
        for (a, p) in self.slices.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (b, q) in other.slices.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                let term = p.shift(&Rational::from_i64(b as i64)).mul(q);
                out[a + b] = out[a + b].add(&term);
            }
        }
        WeylOperator::from_slices(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = WeylOperator::constant(Rational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Clear denominators, divide by the content, and make the lowest
    /// nonzero slice's leading coefficient positive.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.slices.iter().flat_map(|p| p.coeffs()) {
            den = den.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.slices.iter().flat_map(|p| p.coeffs()) {
            g = g.gcd(&(c.numer() * (&den / c.denom())));
        }
        let mut s = Rational::new(den, g);
        let lead_neg = self.slices.iter().find(|p| !p.is_zero()).and_then(|p| p.leading()).is_some_and(|c| c.is_negative());
        if lead_neg {
            s = -s;
        }
        self.scale(&s)
    }

    /// Indicial polynomial `P_0`.
    pub fn indicial(&self) -> QPoly {
        self.slice(0)
    }

    /// Indicial polynomial and its rational roots (with multiplicity).
    pub fn local_exponents(&self, point: Point) -> (QPoly, Vec<Rational>) {
        let p0 = match point {
            Point::Zero => self.indicial(),
            Point::Infinity => self.reciprocal_transform().indicial(),
        };
        let roots = p0.rational_roots();
        (p0, roots)
    }

    /// The single exponent at `point` when all `n` local exponents coincide
    /// (maximal unipotent monodromy).
    pub fn mum_exponent(&self, point: Point) -> Result<Rational> {
        let (p0, roots) = self.local_exponents(point);
        let n = self.order();
        match roots.first() {
            Some(a) if n > 0 && p0.degree() == Some(n) && roots.len() == n && roots.iter().all(|r| r == a) => Ok(a.clone()),
            _ => Err(Error::Rejected(format!(
                "no maximal unipotent monodromy at {point:?}; indicial polynomial {}",
                p0.format_with("s")
            ))),
        }
    }

    /// MUM certification. At zero the indicial polynomial must be a scalar
    /// multiple of `σ^n`; at infinity any single repeated exponent is allowed.
    pub fn is_mum(&self, point: Point) -> bool {
        match (point, self.mum_exponent(point)) {
            (Point::Zero, Ok(a)) => a.is_zero(),
            (Point::Infinity, Ok(_)) => true,
            _ => false,
        }
    }

    /// Substitute `z = 1/w` (so `θ_z = -θ_w`) and multiply by `w^J` on the
    /// left: `Q_i(σ) = P_(J-i)(-σ)`. Exponents are left as they fall.
    pub fn reciprocal_transform(&self) -> Self {
        let span = self.z_span();
        let slices = (0..=span).map(|i| self.slice(span - i).reflect()).collect::<Vec<_>>();
        WeylOperator::from_slices(slices).normalized()
    }

    /// Conjugate by `z^a`: returns `z^-a L z^a = Σ z^j P_j(θ + a)`. Solutions
    /// `f` of the result correspond to solutions `z^a f` of `self`.
    pub fn shift_exponent(&self, a: &Rational) -> Self {
        WeylOperator::from_slices(self.slices.iter().map(|p| p.shift(a)).collect())
    }

    /// `L f` to the precision of `f`, via `z^j P_j(θ) z^k = P_j(k) z^(k+j)`.
    pub fn apply(&self, f: &TruncatedSeries<Rationals>) -> TruncatedSeries<Rationals> {
        apply_slices(&self.slices, f)
    }

    /// `L(f log z + g) = (L f) log z + (Σ z^j P_j'(θ) f + L g)`; returns both parts.
    pub fn apply_with_log(
        &self,
        f: &TruncatedSeries<Rationals>,
        g: &TruncatedSeries<Rationals>,
    ) -> (TruncatedSeries<Rationals>, TruncatedSeries<Rationals>) {
        let derived: Vec<QPoly> = self.slices.iter().map(|p| p.derivative()).collect();
        (self.apply(f), apply_slices(&derived, f).add(&self.apply(g)))
    }

    /// Slices reduced into `F_p`; fails if `p` divides a denominator.
    pub fn reduce_mod_p(&self, field: PrimeField) -> Result<Vec<Poly<PrimeField>>> {
        self.slices
            .iter()
            .map(|s| {
                let c = s
                    .coeffs()
                    .iter()
                    .map(|c| {
                        c.mod_p(field.p())
                            .ok_or_else(|| Error::Domain(format!("operator coefficient {c} is not {}-integral", field.p())))
                    })
                    .collect::<Result<Vec<u64>>>()?;
                Ok(Poly::new(field, c))
            })
            .collect()
    }

    /// Exact image of a polynomial under the reduced operator in `F_p[z]`.
    pub fn apply_poly_mod_p(&self, h: &Poly<PrimeField>) -> Result<Poly<PrimeField>> {
        let field = *h.ring();
        let slices = self.reduce_mod_p(field)?;
        let n = h.coeffs().len() + self.z_span();
        let f = TruncatedSeries::from_slice(field, h.coeffs(), n);
        Ok(Poly::new(field, apply_slices(&slices, &f).into_coeffs()))
    }
}

/// `Σ_j z^j P_j(θ) f` truncated to the precision of `f`.
pub fn apply_slices<R: Ring>(slices: &[Poly<R>], f: &TruncatedSeries<R>) -> TruncatedSeries<R> {
    let r = f.ring().clone();
    let n = f.precision();
    let mut out = vec![r.zero(); n];
    for (j, p) in slices.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        for k in 0..n.saturating_sub(j) {
            let c = f.coeff(k);
            if r.is_zero(c) {
                continue;
            }
            let v = r.mul(&p.eval(&r.integer(k as i64)), c);
            out[k + j] = r.add(&out[k + j], &v);
        }
    }
    TruncatedSeries::new(r, out)
}

impl fmt::Display for WeylOperator {
    /// Expanded normal-ordered form, parseable by [`parse_weyl`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for ((j, i), c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let mut parts = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                parts.push(mag.to_string());
            }
            match j {
                0 => {}
                1 => parts.push("z".into()),
                _ => parts.push(format!("z^{j}")),
            }
            match i {
                0 => {}
                1 => parts.push("theta".into()),
                _ => parts.push(format!("theta^{i}")),
            }
            if parts.is_empty() {
                parts.push("1".into());
            }
            out.push_str(&parts.join("*"));
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// True when every coefficient is an integer.
pub(crate) fn is_integral(op: &WeylOperator) -> bool {
    op.slices.iter().all(|p| p.coeffs().iter().all(|c| c.is_integer()))
}

/// Content gcd of an integral operator (1 for the zero operator).
pub fn content(op: &WeylOperator) -> BigInt {
    let mut g = BigInt::zero();
    for p in &op.slices {
        for c in p.coeffs() {
            g = g.gcd(c.numer());
        }
    }
    if g.is_zero() {
        BigInt::one()
    } else {
        g.abs()
    }
}
