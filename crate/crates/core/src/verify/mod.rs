//! Congruence checks for Hasse–Witt invariants: `A_p(z) = ϖ₀(z)^(p-1) · trunc_p ϖ₀(z)`
//! before and after the mirror substitution, plus reconstruction and
//! identity suites built on the same kernels.

mod conjecture;
mod identities;

use serde::{Deserialize, Serialize};

use crate::arith::{PrimeField, Rational};
use crate::catalog::{HwSign, OperatorSpec};
use crate::diffop::{holomorphic_solution, mirror_map, MirrorData, WeylOperator};
use crate::error::{Error, Result};
use crate::series::{FpSeries, QSeries};

pub use conjecture::{
    classify_pth_power, crt_reconstruct_series, dual_mum_check, sqrt_conjecture_check, sqrt_target, DualMumReport,
    Reconstruction, SqrtConjectureReport, SqrtEntry,
};
pub use identities::{classical_identity_suite, eisenstein_relation_check, IdentityCheck};

/// `A_p(z)` to precision `nz` for the holomorphic period of `op`.
pub fn ap_series(op: &WeylOperator, p: u64, nz: usize) -> Result<FpSeries> {
    let hol = holomorphic_solution(op, nz.max(p as usize))?;
    ap_from_period(&hol, p, nz)
}

/// `A_p(z)` from a precomputed period with at least `max(nz, p)` terms.
/// Uses `ϖ^(p-1) = ϖ(z^p) / ϖ` in characteristic `p`.
pub fn ap_from_period(hol: &QSeries, p: u64, nz: usize) -> Result<FpSeries> {
    let field = PrimeField::new(p)?;
    let need = nz.max(p as usize);
    if hol.precision() < need {
        return Err(Error::Rejected(format!("period has {} terms, {need} needed", hol.precision())));
    }
    let w = hol.truncate(need).reduce_mod_p(field)?;
    let trunc = truncation(&w, p, nz);
    let w = w.truncate(nz);
    Ok(frobenius_power(&w)?.mul(&trunc))
}

/// `w^(p-1)` as `w(z^p) / w`; valid over `F_p` since `c^p = c`.
pub fn frobenius_power(w: &FpSeries) -> Result<FpSeries> {
    w.frobenius().div(w)
}

/// `w^(p-1)` by repeated squaring.
pub fn binary_power(w: &FpSeries) -> FpSeries {
    w.pow_u64(w.field().p() - 1)
}

/// The first `p` coefficients of `w`, as a series of precision `n`.
fn truncation(w: &FpSeries, p: u64, n: usize) -> FpSeries {
    let k = (p as usize).min(n).min(w.precision());
    let mut c = w.coeffs()[..k].to_vec();
    c.resize(n, 0);
    FpSeries::new(w.field(), c)
}

/// Outcome of comparing a series over `F_p` with 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnityCheck {
    /// Precision checked.
    pub order: usize,
    /// Equal to 1 up to `order`.
    pub holds: bool,
    /// First index where the series differs from 1.
    pub first_deviation: Option<usize>,
    /// No deviation below `z^p`.
    pub weak_form_holds: bool,
}

/// Compare `a` with 1 up to `order` (capped at its precision).
pub fn check_unity(a: &FpSeries, order: usize) -> UnityCheck {
    let p = a.field().p();
    let order = order.min(a.precision());
    let first_deviation = (0..order).find(|&k| *a.coeff(k) != u64::from(k == 0));
    UnityCheck {
        order,
        holds: first_deviation.is_none(),
        first_deviation,
        weak_form_holds: first_deviation.is_none_or(|k| k as u64 >= p),
    }
}

/// `A_p(z(q))` modulo `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MirrorCheck {
    pub order: usize,
    /// Constant term in `F_p`.
    pub constant: u64,
    /// All of `q^1 .. q^(order-1)` vanish.
    pub higher_vanish: bool,
    pub first_nonzero: Option<usize>,
}

/// `A_p(z(q))` mod `p` from precomputed mirror data, including the family's
/// sign. Both `ϖ₀` and `z(q)` are reduced first and composed over `F_p`.
pub fn mirror_check_from(m: &MirrorData, p: u64, sign: HwSign) -> Result<MirrorCheck> {
    let a = ap_after_mirror(m, p)?.scale(&sign.value_mod(p));
    let order = a.precision();
    let first_nonzero = (1..order).find(|&k| *a.coeff(k) != 0);
    Ok(MirrorCheck { order, constant: *a.coeff(0), higher_vanish: first_nonzero.is_none(), first_nonzero })
}

/// The series `ϖ₀^(p-1) · trunc_p ϖ₀` at `z = z(q)` over `F_p`, to the
/// precision of the mirror data; no sign applied.
pub fn ap_after_mirror(m: &MirrorData, p: u64) -> Result<FpSeries> {
    let field = PrimeField::new(p)?;
    let z = m.z_of_q.reduce_mod_p(field)?;
    let w = m.hol.reduce_mod_p(field)?;
    let n = z.precision().min(w.precision());
    // monomials z^k with k >= n only contribute O(q^n)
    let trunc = truncation(&w, p, n);
    let f = w.truncate(n).compose(&z)?;
    Ok(frobenius_power(&f)?.mul(&trunc.compose(&z)?))
}

/// `A_p(z(q))` mod `p` for the mirror map of `op` with scale `kappa`.
pub fn check_unity_after_mirror(op: &WeylOperator, p: u64, nq: usize, kappa: &Rational, sign: HwSign) -> Result<MirrorCheck> {
    mirror_check_from(&mirror_map(op, nq, kappa)?, p, sign)
}

/// Same computation composed over `Q` and reduced at the end; slow, for
/// cross-checking at small orders.
pub fn ap_after_mirror_exact(op: &WeylOperator, p: u64, nq: usize, kappa: &Rational) -> Result<FpSeries> {
    let m = mirror_map(op, nq, kappa)?;
    let trunc = QSeries::from_slice(crate::arith::Rationals, &m.hol.coeffs()[..(p as usize).min(nq)], nq);
    let f = m.hol.compose(&m.z_of_q)?;
    let a = f.pow_u64(p - 1).mul(&trunc.compose(&m.z_of_q)?);
    a.reduce_mod_p(PrimeField::new(p)?)
}

/// Verification settings shared by all primes of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub z_order: usize,
    /// Mirror-substituted check to this `q` order; `None` skips it.
    pub q_order: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { z_order: 200, q_order: Some(100) }
    }
}

/// Per-(operator, prime) result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub operator: String,
    pub p: u64,
    /// `A_p(z) ≡ 1` to the configured order.
    pub unity: Option<UnityCheck>,
    /// `f_p` with `A_p = f_p(z)^p`, when every nonconstant exponent is a multiple of `p`.
    pub pth_power: Option<Vec<u64>>,
    pub mirror: Option<MirrorCheck>,
    /// Constant of `A_p(z(q))` required by the operator's sign convention;
    /// `None` where only "up to sign" is claimed.
    pub expected_constant: Option<u64>,
    /// Period coefficients that are not `p`-integral.
    pub integrality_failures: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub runtime_ms: Option<u64>,
}

impl VerificationReport {
    /// Weak form holds and, when checked, `A_p(z(q))` is the expected constant.
    pub fn passed(&self) -> bool {
        self.integrality_failures.is_empty()
            && self.unity.as_ref().is_some_and(|u| u.weak_form_holds)
            && self.mirror.as_ref().is_none_or(|m| m.higher_vanish && self.expected_constant.is_none_or(|c| c == m.constant))
    }
}

/// Periods and mirror data computed once and shared read-only across primes.
#[derive(Clone, Debug)]
pub struct PreparedOperator {
    pub spec: OperatorSpec,
    pub config: VerifyConfig,
    pub hol: QSeries,
    pub mirror: Option<MirrorData>,
}

impl PreparedOperator {
    /// `max_prime` sizes the period so every truncation is available.
    pub fn new(spec: OperatorSpec, config: VerifyConfig, max_prime: u64) -> Result<Self> {
        if config.z_order < 2 || config.q_order.is_some_and(|q| q < 2) {
            return Err(Error::Rejected("orders must be at least 2".into()));
        }
        let n = config.z_order.max(max_prime as usize).max(config.q_order.unwrap_or(0));
        let hol = holomorphic_solution(&spec.op, n)?;
        let mirror = config.q_order.map(|nq| mirror_map(&spec.op, nq, &spec.kappa)).transpose()?;
        Ok(PreparedOperator { spec, config, hol, mirror })
    }

    pub fn verify(&self, p: u64) -> Result<VerificationReport> {
        self.verify_with(p, None).map(|(r, _)| r)
    }

    /// As [`verify`](Self::verify), reusing a previously computed `A_p(z)` of
    /// sufficient precision. Returns the `A_p(z)` used, if any was needed.
    pub fn verify_with(&self, p: u64, cached: Option<FpSeries>) -> Result<(VerificationReport, Option<FpSeries>)> {
        let need = self.config.z_order.max(p as usize);
        let owned;
        let hol = if self.hol.precision() >= need {
            &self.hol
        } else {
            owned = holomorphic_solution(&self.spec.op, need)?;
            &owned
        };
        let integrality_failures: Vec<usize> = (0..need).filter(|&k| hol.coeff(k).mod_p(p).is_none()).collect();
        let mut report = VerificationReport {
            operator: self.spec.id.clone(),
            p,
            unity: None,
            pth_power: None,
            mirror: None,
            expected_constant: (self.spec.hw_sign == HwSign::Legendre).then(|| self.spec.hw_sign.value_mod(p)),
            integrality_failures,
            runtime_ms: None,
        };
        if !report.integrality_failures.is_empty() {
            return Ok((report, None));
        }
        let a = match cached {
            Some(a) if a.field().p() == p && a.precision() >= self.config.z_order => a.truncate(self.config.z_order),
            _ => ap_from_period(hol, p, self.config.z_order)?,
        };
        report.unity = Some(check_unity(&a, self.config.z_order));
        report.pth_power = classify_pth_power(&a).map(|f| f.into_coeffs());
        if let Some(m) = &self.mirror {
            match mirror_check_from(m, p, self.spec.hw_sign) {
                Ok(c) => report.mirror = Some(c),
                Err(Error::Integrality { index, .. }) => report.integrality_failures.push(index),
                Err(e) => return Err(e),
            }
        }
        Ok((report, Some(a)))
    }
}
