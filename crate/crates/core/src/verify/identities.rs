use serde::{Deserialize, Serialize};

use super::{check_unity, UnityCheck};
use crate::arith::{PrimeField, Rational, Rationals};
use crate::catalog::lookup;
use crate::diffop::mirror_map;
use crate::error::{Error, Result};
use crate::hassewitt::hw_weierstrass;
use crate::qexp::{eisenstein, lambda_map, theta2, theta3, theta4};
use crate::series::{FpSeries, PuiseuxSeries, QSeries};

/// `A_p(E₄/12, -E₆/216) ≡ 1 mod p` to `O(q^nq)`, where `A_p` is the
/// Weierstrass Hasse–Witt polynomial.
pub fn eisenstein_relation_check(p: u64, nq: usize) -> Result<UnityCheck> {
    let field = PrimeField::new(p)?;
    let hw = hw_weierstrass(p)?;
    let t2 = eisenstein(4, nq)?.scale(&Rational::frac(1, 12)).reduce_mod_p(field)?;
    let t3 = eisenstein(6, nq)?.scale(&Rational::frac(-1, 216)).reduce_mod_p(field)?;
    let v = hw.eval(&field, t2.coeffs(), t3.coeffs(), nq);
    Ok(check_unity(&FpSeries::new(field, v), nq))
}

/// One named identity of the Legendre / `Γ(2)` suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    /// First index where the two sides differ.
    pub first_mismatch: Option<usize>,
}

fn compare(name: &str, lhs: &QSeries, rhs: &QSeries) -> IdentityCheck {
    let n = lhs.precision().min(rhs.precision());
    let first_mismatch = (0..n).find(|&k| lhs.coeff(k) != rhs.coeff(k));
    IdentityCheck { name: name.into(), holds: first_mismatch.is_none(), first_mismatch }
}

fn poly_in(z: &QSeries, coeffs: &[Rational]) -> QSeries {
    let n = z.precision();
    coeffs.iter().rev().fold(QSeries::zero(Rationals, n), |acc, c| acc.mul(z).add(&QSeries::monomial(Rationals, c.clone(), 0, n)))
}

/// With `F = ϖ₀(z(q))` for the Legendre operator (`κ = 16`) and `z(q) = λ(q)`:
/// `F = θ₃²`, `(z²-z+1)F⁴ = E₄(q²)`, `(z³-3z²/2-3z/2+1)F⁶ = E₆(q²)`,
/// `F²/4 = q∂_q log(θ₂/θ₄)` and `zF²/4 = q∂_q log(θ₃/θ₄)`, all exact over `Q`.
pub fn classical_identity_suite(nq: usize) -> Result<Vec<IdentityCheck>> {
    let spec = lookup("legendre").ok_or_else(|| Error::Inconsistent("Legendre operator missing".into()))?;
    let m = mirror_map(&spec.op, nq, &spec.kappa)?;
    let z = m.z_of_q.clone();
    let f = m.hol.compose(&z)?;
    let f2 = f.pow_u64(2);
    let r = Rational::from_i64;
    let half = Rational::frac(3, 2);

    let e4 = eisenstein(4, nq)?.dilate(2);
    let e6 = eisenstein(6, nq)?.dilate(2);
    let lhs4 = poly_in(&z, &[r(1), r(-1), r(1)]).mul(&f.pow_u64(4));
    let lhs6 = poly_in(&z, &[r(1), -half.clone(), -half, r(1)]).mul(&f.pow_u64(6));

    let th4 = PuiseuxSeries::new(Rational::zero(), theta4(nq))?;
    let th3 = PuiseuxSeries::new(Rational::zero(), theta3(nq))?;
    let dlog24 = theta2(nq).div(&th4)?.log_derivative()?;
    let dlog34 = th3.div(&th4)?.log_derivative()?;
    let quarter = Rational::frac(1, 4);

    Ok(vec![
        compare("lambda", &z, &lambda_map(nq)?),
        compare("theta3_squared", &f, &theta3(nq).pow_u64(2)),
        compare("e4_relation", &lhs4, &e4),
        compare("e6_relation", &lhs6, &e6),
        compare("log_theta2_over_theta4", &f2.scale(&quarter), &dlog24),
        compare("log_theta3_over_theta4", &z.mul(&f2).scale(&quarter), &dlog34),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weierstrass_at_small_primes() {
        for p in [5u64, 7, 11] {
            assert!(eisenstein_relation_check(p, 30).unwrap().holds, "p = {p}");
        }
        assert!(eisenstein_relation_check(3, 10).is_err());
    }

    #[test]
    fn suite_holds() {
        for c in classical_identity_suite(30).unwrap() {
            assert!(c.holds, "{} fails at {:?}", c.name, c.first_mismatch);
        }
    }
}
