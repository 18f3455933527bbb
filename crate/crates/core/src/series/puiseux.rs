use num_bigint::BigInt;
use num_traits::Zero;

use super::QSeries;
use crate::arith::{Rational, Rationals};
use crate::error::{Error, Result};

/// `q^a * T(q)` with `a` a rational whose denominator divides 24 and `T` a
/// series with nonzero constant term. Covers theta constants and eta
/// quotients, whose prefactors are `q^(1/4)` and `q^(m/24)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxSeries {
    exponent: Rational,
    tail: QSeries,
}

fn check_exponent(a: &Rational) -> Result<()> {
    let d = a.denom();
    if (BigInt::from(24) % d).is_zero() {
        Ok(())
    } else {
        Err(Error::Rejected(format!("prefactor exponent {a} has denominator not dividing 24")))
    }
}

impl PuiseuxSeries {
    /// Build from a prefactor exponent and a tail; leading zeros of the tail
    /// are absorbed into the exponent.
    pub fn new(exponent: Rational, tail: QSeries) -> Result<Self> {
        check_exponent(&exponent)?;
        let v = tail.valuation().ok_or(Error::Domain("tail is zero to its precision".into()))?;
        let n = tail.precision();
        let tail = if v > 0 { QSeries::from_slice(Rationals, &tail.coeffs()[v..], n - v) } else { tail };
        Ok(PuiseuxSeries { exponent: &exponent + &Rational::from_i64(v as i64), tail })
    }

    pub fn exponent(&self) -> &Rational {
        &self.exponent
    }

    pub fn tail(&self) -> &QSeries {
        &self.tail
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        PuiseuxSeries::new(&self.exponent + &other.exponent, self.tail.mul(&other.tail))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        PuiseuxSeries::new(&self.exponent - &other.exponent, self.tail.div(&other.tail)?)
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        PuiseuxSeries::new(self.exponent.mul_i64(e), self.tail.pow_i64(e)?)
    }

    pub fn scale(&self, c: &Rational) -> Result<Self> {
        PuiseuxSeries::new(self.exponent.clone(), self.tail.scale(c))
    }

    /// `q d/dq log(q^a T) = a + q T'/T`, a series with constant term `a`.
    pub fn log_derivative(&self) -> Result<QSeries> {
        let mut s = self.tail.theta().div(&self.tail)?;
        let c0 = s.coeff(0) + &self.exponent;
        s.set_coeff(0, c0);
        Ok(s)
    }

    /// Drop the prefactor when it is a non-negative integer power of `q`.
    /// The result has precision `N + a`.
    pub fn to_series(&self) -> Result<QSeries> {
        let a = self
            .exponent
            .to_i64()
            .filter(|&a| a >= 0)
            .ok_or_else(|| Error::Domain(format!("prefactor q^{} is not a non-negative integer power", self.exponent)))?
            as usize;
        let n = self.tail.precision();
        let mut v = vec![Rational::zero(); a];
        v.extend(self.tail.coeffs().iter().cloned());
        Ok(QSeries::from_slice(Rationals, &v, n + a))
    }
}
