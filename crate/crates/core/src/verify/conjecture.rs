use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{ap_from_period, check_unity};
use crate::arith::{crt_combine, rational_reconstruction, splitting_in_q_sqrt_m5, PrimeField, Rational, Rationals, Splitting};
use crate::diffop::{holomorphic_solution, Point, WeylOperator};
use crate::error::{Error, Result};
use crate::hassewitt::hw_truncation;
use crate::series::{FpSeries, QSeries};

/// `f_p` with `a = f_p(z)^p`, when every exponent of `a` with a nonzero
/// coefficient is a multiple of `p`. Over `F_p` the coefficients of `f_p` are
/// those of `a` at multiples of `p`.
pub fn classify_pth_power(a: &FpSeries) -> Option<FpSeries> {
    let p = a.field().p() as usize;
    let n = a.precision();
    if a.coeffs().iter().enumerate().any(|(k, &c)| c != 0 && k % p != 0) {
        return None;
    }
    let c = a.coeffs().iter().step_by(p).cloned().collect::<Vec<_>>();
    Some(FpSeries::new(a.field(), c).truncate(n.div_ceil(p)))
}

/// Termwise CRT + rational reconstruction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reconstruction {
    pub primes: Vec<u64>,
    /// `None` where reconstruction failed.
    pub coeffs: Vec<Option<Rational>>,
    /// Unchanged when the last prime is dropped.
    pub stable: Vec<bool>,
}

impl Reconstruction {
    /// Number of leading coefficients that are determined and stable.
    pub fn stable_prefix(&self) -> usize {
        self.coeffs.iter().zip(&self.stable).take_while(|(c, &s)| c.is_some() && s).count()
    }

    /// The series, if every coefficient is determined.
    pub fn to_series(&self) -> Option<QSeries> {
        let c = self.coeffs.iter().cloned().collect::<Option<Vec<_>>>()?;
        Some(QSeries::new(Rationals, c))
    }
}

fn reconstruct_index(samples: &[(u64, FpSeries)], k: usize) -> Result<Option<Rational>> {
    let residues: Vec<(BigInt, u64)> = samples.iter().map(|(p, f)| (BigInt::from(*f.coeff(k)), *p)).collect();
    let (r, m) = crt_combine(&residues)?;
    Ok(rational_reconstruction(&r, &m))
}

/// Reconstruct a series over `Q` from its reductions modulo several primes.
pub fn crt_reconstruct_series(samples: &[(u64, FpSeries)], nz: usize) -> Result<Reconstruction> {
    if samples.len() < 2 {
        return Err(Error::Rejected("reconstruction needs at least two primes".into()));
    }
    if let Some((p, f)) = samples.iter().find(|(p, f)| f.precision() < nz || f.field().p() != *p) {
        return Err(Error::Rejected(format!("sample for p = {p} has precision {} (< {nz}) or wrong field", f.precision())));
    }
    let fewer = &samples[..samples.len() - 1];
    let mut coeffs = Vec::with_capacity(nz);
    let mut stable = Vec::with_capacity(nz);
    for k in 0..nz {
        let full = reconstruct_index(samples, k)?;
        let dropped = if fewer.len() >= 2 { reconstruct_index(fewer, k)? } else { None };
        stable.push(full.is_some() && full == dropped);
        coeffs.push(full);
    }
    Ok(Reconstruction { primes: samples.iter().map(|(p, _)| *p).collect(), coeffs, stable })
}

/// `sqrt(1 - 25000 z)` to precision `n`.
pub fn sqrt_target(n: usize) -> Result<QSeries> {
    QSeries::from_slice(Rationals, &[Rational::one(), Rational::from_i64(-25000)], n).sqrt()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqrtEntry {
    pub p: u64,
    pub splitting: Splitting,
    /// `f_p` when `A_p` is a `p`-th power to the computed order.
    pub f_p: Option<Vec<u64>>,
    /// For inert primes: `f_p` equals `sqrt(1 - 25000 z)` mod `p`.
    pub matches: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqrtConjectureReport {
    pub operator_order: usize,
    pub entries: Vec<SqrtEntry>,
    pub inert_total: usize,
    pub inert_passed: usize,
}

impl SqrtConjectureReport {
    pub fn passed(&self) -> bool {
        self.inert_passed == self.inert_total
    }

    /// `(p, f_p)` for the inert primes whose `A_p` was a `p`-th power.
    pub fn inert_samples(&self) -> Vec<(u64, FpSeries)> {
        self.entries
            .iter()
            .filter(|e| e.splitting == Splitting::Inert)
            .filter_map(|e| {
                let f = e.f_p.as_ref()?;
                Some((e.p, FpSeries::from_u64s(PrimeField::new(e.p).ok()?, f)))
            })
            .collect()
    }
}

/// For each prime, classify it in `Q(sqrt(-5))`; for inert primes check that
/// `A_p ≡ f_p^p` with `f_p ≡ sqrt(1 - 25000 z)` to `O(z^nz)`.
pub fn sqrt_conjecture_check(op: &WeylOperator, primes: &[u64], nz: usize) -> Result<SqrtConjectureReport> {
    let max_p = primes.iter().copied().max().unwrap_or(2) as usize;
    let hol = holomorphic_solution(op, nz * max_p)?;
    let target = sqrt_target(nz)?;
    let mut entries = Vec::with_capacity(primes.len());
    for &p in primes {
        let a = ap_from_period(&hol, p, nz * p as usize)?;
        let f = classify_pth_power(&a);
        let splitting = splitting_in_q_sqrt_m5(p);
        let matches = (splitting == Splitting::Inert)
            .then(|| -> Result<bool> {
                let want = target.reduce_mod_p(PrimeField::new(p)?)?;
                Ok(f.as_ref().is_some_and(|f| f.truncate(nz) == want))
            })
            .transpose()?;
        entries.push(SqrtEntry { p, splitting, f_p: f.map(|f| f.into_coeffs()), matches });
    }
    let inert_total = entries.iter().filter(|e| e.splitting == Splitting::Inert).count();
    let inert_passed = entries.iter().filter(|e| e.matches == Some(true)).count();
    Ok(SqrtConjectureReport { operator_order: nz, entries, inert_total, inert_passed })
}

/// Hasse–Witt data at the two MUM points `0` and `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualMumReport {
    pub p: u64,
    /// Local exponent at infinity, as text.
    pub exponent_at_infinity: String,
    /// `Σ_{k<p} c_k z^k` mod `p` at zero, padded to `p` coefficients.
    pub truncation_at_zero: Vec<u64>,
    /// Same for the period at infinity in `w = 1/z`.
    pub truncation_at_infinity: Vec<u64>,
    pub reversal_holds: bool,
    /// `A_p ≡ 1` to `O(z^nz)` at each point.
    pub unity_at_zero: bool,
    pub unity_at_infinity: bool,
}

fn padded(mut c: Vec<u64>, p: u64) -> Vec<u64> {
    c.resize(p as usize, 0);
    c
}

/// Compare the Hasse–Witt truncations at `0` and `∞`, which should be
/// related by `z -> 1/z`, i.e. reversed coefficient lists.
pub fn dual_mum_check(op: &WeylOperator, p: u64, nz: usize) -> Result<DualMumReport> {
    let a = op.mum_exponent(Point::Infinity)?;
    let at_inf = op.reciprocal_transform().shift_exponent(&a).normalized();
    let t0 = padded(hw_truncation(op, p)?.coeffs().to_vec(), p);
    let t1 = padded(hw_truncation(&at_inf, p)?.coeffs().to_vec(), p);
    let mut rev = t1.clone();
    rev.reverse();
    let unity = |o: &WeylOperator| -> Result<bool> {
        let hol = holomorphic_solution(o, nz.max(p as usize))?;
        Ok(check_unity(&ap_from_period(&hol, p, nz)?, nz).holds)
    };
    Ok(DualMumReport {
        p,
        exponent_at_infinity: a.to_string(),
        reversal_holds: t0 == rev,
        truncation_at_zero: t0,
        truncation_at_infinity: t1,
        unity_at_zero: unity(op)?,
        unity_at_infinity: unity(&at_inf)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    fn fp(p: u64, c: &[u64]) -> FpSeries {
        FpSeries::from_u64s(PrimeField::new(p).unwrap(), c)
    }

    #[test]
    fn pth_power_extraction() {
        let a = fp(3, &[1, 0, 0, 2, 0, 0, 1, 0]);
        assert_eq!(classify_pth_power(&a), Some(fp(3, &[1, 2, 1])));
        assert_eq!(classify_pth_power(&fp(3, &[1, 1, 0])), None);
        assert_eq!(classify_pth_power(&fp(5, &[1])), Some(fp(5, &[1])));
    }

    #[test]
    fn reconstructs_one_plus_third() {
        let primes = [5u64, 7, 11, 13, 17];
        let want = QSeries::new(Rationals, vec![Rational::one(), Rational::frac(1, 3), Rational::zero()]);
        let samples: Vec<_> = primes.iter().map(|&p| (p, want.reduce_mod_p(PrimeField::new(p).unwrap()).unwrap())).collect();
        let r = crt_reconstruct_series(&samples, 3).unwrap();
        assert_eq!(r.to_series(), Some(want));
        assert_eq!(r.stable_prefix(), 3);
        assert!(crt_reconstruct_series(&samples[..1], 3).is_err());
    }

    #[test]
    fn sqrt_conjecture_small_primes() {
        let op = lookup("ell").unwrap().op;
        let r = sqrt_conjecture_check(&op, &[11, 13, 23], 4).unwrap();
        assert_eq!(r.inert_total, 2);
        assert!(r.passed());
        let e13 = &r.entries[1];
        assert_eq!(e13.f_p.as_deref().map(|f| &f[..4]), Some(&[1u64, 6, 8, 4][..]));
        assert_eq!(r.entries[2].splitting, Splitting::Split);
        assert_eq!(r.entries[2].matches, None);
    }

    #[test]
    fn rodland_truncations_reverse() {
        let op = lookup("rodland").unwrap().op;
        let r = dual_mum_check(&op, 7, 30).unwrap();
        assert_eq!(r.truncation_at_zero, vec![1, 5, 4, 6, 2, 3, 1]);
        assert!(r.reversal_holds);
        assert_eq!(r.exponent_at_infinity, "1");
        let r2 = dual_mum_check(&op, 2, 30).unwrap();
        assert!(r2.unity_at_zero && r2.unity_at_infinity);
        assert!(dual_mum_check(&lookup("dwork3").unwrap().op, 7, 10).is_err());
    }
}
