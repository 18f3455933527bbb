//! Frobenius solutions at a MUM point and the mirror map built from them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{is_integral, WeylOperator};
use crate::arith::{Rational, Rationals};
use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::series::QSeries;

/// Periods and coordinates at a MUM point.
#[derive(Clone, Debug, PartialEq)]
pub struct MirrorData {
    /// Holomorphic period, constant term 1.
    pub hol: QSeries,
    /// Log companion `G`, `G(0) = 0`.
    pub logc: QSeries,
    /// `q(z) = (z/κ) exp(G/ϖ₀)`.
    pub q_of_z: QSeries,
    /// Compositional inverse of `q_of_z`.
    pub z_of_q: QSeries,
    pub kappa: Rational,
}

fn check_exponent_zero(op: &WeylOperator) -> Result<QPoly> {
    let p0 = op.indicial();
    if p0.is_zero() || !p0.coeff(0).is_zero() {
        return Err(Error::Rejected(format!("0 is not a local exponent; indicial polynomial {}", p0.format_with("s"))));
    }
    Ok(p0)
}

fn eval_int(p: &QPoly, x: i64) -> BigInt {
    let x = BigInt::from(x);
    let mut acc = BigInt::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc * &x + c.numer();
    }
    acc
}

/// Holomorphic solution with `c_0 = 1` from the recurrence
/// `P_0(k) c_k = -Σ_{j=1..min(k,J)} P_j(k-j) c_(k-j)`.
///
/// Integral operators run over `Z` and only fall back to `Q` once a
/// division turns out inexact.
pub fn holomorphic_solution(op: &WeylOperator, n: usize) -> Result<QSeries> {
    let p0 = check_exponent_zero(op)?;
    let span = op.z_span();
    let slices = op.slices();
    let mut out: Vec<Rational> = Vec::with_capacity(n);
    if n == 0 {
        return Ok(QSeries::new(Rationals, out));
    }

    let mut ints: Vec<BigInt> = vec![BigInt::one()];
    let mut k = 1;
    if is_integral(op) {
        while k < n {
            let d = eval_int(&p0, k as i64);
            if d.is_zero() {
                return Err(Error::Resonance { k });
            }
            let mut s = BigInt::zero();
            for j in 1..=span.min(k) {
                if !slices[j].is_zero() {
                    s += eval_int(&slices[j], (k - j) as i64) * &ints[k - j];
                }
            }
            let (q, r) = s.div_rem(&d);
            if !r.is_zero() {
                break;
            }
            ints.push(-q);
            k += 1;
        }
    }
    out.extend(ints.into_iter().map(Rational::from_integer));

    while k < n {
        let d = p0.eval_i64(k as i64);
        if d.is_zero() {
            return Err(Error::Resonance { k });
        }
        let mut s = Rational::zero();
        for j in 1..=span.min(k) {
            if !slices[j].is_zero() {
                s += &(slices[j].eval_i64((k - j) as i64) * &out[k - j]);
            }
        }
        out.push(-(s / d));
        k += 1;
    }
    Ok(QSeries::new(Rationals, out))
}

/// Holomorphic solution and its log companion `G`, so that `ϖ₀ log z + G`
/// is a second solution.
pub fn frobenius_pair(op: &WeylOperator, n: usize) -> Result<(QSeries, QSeries)> {
    let hol = holomorphic_solution(op, n)?;
    let p0 = op.indicial();
    if !p0.derivative().coeff(0).is_zero() {
        return Err(Error::Rejected("0 is not a repeated local exponent; no logarithmic solution".into()));
    }
    let slices = op.slices();
    let derived: Vec<QPoly> = slices.iter().map(|p| p.derivative()).collect();
    let span = op.z_span();
    let c = hol.coeffs();
    let mut g = vec![Rational::zero(); n];
    for k in 1..n {
        let d = p0.eval_i64(k as i64);
        if d.is_zero() {
            return Err(Error::Resonance { k });
        }
        let mut s = derived[0].eval_i64(k as i64) * &c[k];
        for j in 1..=span.min(k) {
            let m = (k - j) as i64;
            if !slices[j].is_zero() {
                s += &(slices[j].eval_i64(m) * &g[k - j]);
            }
            if !derived[j].is_zero() {
                s += &(derived[j].eval_i64(m) * &c[k - j]);
            }
        }
        g[k] = -(s / d);
    }
    Ok((hol, QSeries::new(Rationals, g)))
}

pub fn log_companion(op: &WeylOperator, n: usize) -> Result<QSeries> {
    Ok(frobenius_pair(op, n)?.1)
}

/// `q(z) = (z/κ) exp(G/ϖ₀)` and its inverse `z(q)`, both to precision `n`.
pub fn mirror_map(op: &WeylOperator, n: usize, kappa: &Rational) -> Result<MirrorData> {
    let kinv = kappa.recip().ok_or(Error::Domain("mirror scale must be nonzero".into()))?;
    let (hol, logc) = frobenius_pair(op, n)?;
    let q_of_z = logc.div(&hol)?.exp()?.shift(1).truncate(n).scale(&kinv);
    let z_of_q = q_of_z.revert()?;
    Ok(MirrorData { hol, logc, q_of_z, z_of_q, kappa: kappa.clone() })
}

/// Holomorphic period at infinity in `w = 1/z`, after stripping the common
/// local exponent `a`: the period is `w^a` times the returned series.
pub fn period_at_infinity(op: &WeylOperator, n: usize) -> Result<(Rational, QSeries)> {
    let t = op.reciprocal_transform();
    let a = t.mum_exponent(super::Point::Zero)?;
    let shifted = t.shift_exponent(&a).normalized();
    Ok((a, holomorphic_solution(&shifted, n)?))
}
