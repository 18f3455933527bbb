//! Hasse–Witt polynomials modulo `p`: closed forms for the hypergeometric
//! families, the Weierstrass and Legendre elliptic cases, and truncations of
//! holomorphic periods for arbitrary operators.

pub mod factor;

use serde::{Deserialize, Serialize};

use crate::arith::{factorial_ratio, mod_inverse, mod_pow, Family, PrimeField, Ring};
use crate::diffop::{holomorphic_solution, WeylOperator};
use crate::error::{Error, Result};
use crate::poly::Poly;

pub use factor::{factor_monic, FpPoly};

/// `Σ m_k y^k x^(p-1-dk)` over `F_p`, homogeneous with `deg x = 1`, `deg y = d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HWPolynomial {
    pub p: u64,
    pub step: u64,
    /// `m_k` for `k = 0..=(p-1)/d`.
    pub coeffs: Vec<u64>,
}

impl HWPolynomial {
    /// Dehomogenize at `x = 1`: `Σ m_k y^k`.
    pub fn dehomogenize(&self) -> FpPoly {
        Poly::new(PrimeField::new(self.p).expect("prime"), self.coeffs.clone())
    }

    /// Nonzero terms `(x-exponent, y-exponent, coefficient)`.
    pub fn terms(&self) -> Vec<(u64, u64, u64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (self.p - 1 - self.step * k as u64, k as u64, c))
            .collect()
    }

    /// Expanded rendering, highest power of `x` first.
    pub fn render(&self) -> String {
        render_homogeneous(&self.dehomogenize(), self.step, self.p - 1)
    }
}

/// `Σ c t₂^b t₃^c` with `4b + 6c = p - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedHWPolynomial {
    pub p: u64,
    /// `(b, c, coefficient)`, nonzero coefficients only.
    pub monomials: Vec<(u64, u64, u64)>,
}

impl WeightedHWPolynomial {
    /// Evaluate at series values of `t₂`, `t₃`.
    pub fn eval<R: Ring>(&self, ring: &R, t2: &[R::Elem], t3: &[R::Elem], n: usize) -> Vec<R::Elem> {
        use crate::series::TruncatedSeries;
        let a = TruncatedSeries::from_slice(ring.clone(), t2, n);
        let b = TruncatedSeries::from_slice(ring.clone(), t3, n);
        let mut acc = TruncatedSeries::zero(ring.clone(), n);
        for &(i, j, c) in &self.monomials {
            let term = a.pow_u64(i).mul(&b.pow_u64(j)).scale(&ring.integer(c as i64));
            acc = acc.add(&term);
        }
        acc.into_coeffs()
    }
}

/// Factored form: `unit · x^x_power · Π h_i(x, y)^e_i` with each `h_i` the
/// rehomogenization of an irreducible `f_i(y)` normalized to `f_i(0) = 1`
/// (or monic when `f_i = y`).
#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationResult {
    pub p: u64,
    pub step: u64,
    pub unit: u64,
    pub x_power: u64,
    pub factors: Vec<(FpPoly, usize)>,
}

impl FactorizationResult {
    /// Multiply back out.
    pub fn expand(&self) -> HWPolynomial {
        let field = PrimeField::new(self.p).expect("prime");
        let f = self.factors.iter().fold(Poly::constant(field, self.unit), |acc, (g, e)| acc.mul(&g.pow(*e as u32)));
        let mut coeffs = f.coeffs().to_vec();
        coeffs.resize(((self.p - 1) / self.step) as usize + 1, 0);
        HWPolynomial { p: self.p, step: self.step, coeffs }
    }

    /// Table style: `x^2*(x^10+3*x^5*y+y^2)`.
    pub fn render(&self) -> String {
        let mut pieces = Vec::new();
        if self.unit != 1 {
            pieces.push(self.unit.to_string());
        }
        match self.x_power {
            0 => {}
            1 => pieces.push("x".into()),
            m => pieces.push(format!("x^{m}")),
        }
        let bare = pieces.is_empty() && self.factors.len() == 1 && self.factors[0].1 == 1;
        for (g, e) in &self.factors {
            let deg = g.degree().unwrap_or(0) as u64 * self.step;
            let body = render_homogeneous(g, self.step, deg);
            let multi_term = g.coeffs().iter().filter(|&&c| c != 0).count() > 1;
            let mut s = if multi_term && !bare { format!("({body})") } else { body };
            if *e > 1 {
                if !s.starts_with('(') {
                    s = format!("({s})");
                }
                s = format!("{s}^{e}");
            }
            pieces.push(s);
        }
        if pieces.is_empty() {
            "1".into()
        } else {
            pieces.join("*")
        }
    }
}

/// Render `f(y)` homogenized to total degree `total` with `deg y = d`.
fn render_homogeneous(f: &FpPoly, d: u64, total: u64) -> String {
    let mut terms = Vec::new();
    for (k, &c) in f.coeffs().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let xe = total - d * k as u64;
        let mut parts = Vec::new();
        if c != 1 || (xe == 0 && k == 0) {
            parts.push(c.to_string());
        }
        match xe {
            0 => {}
            1 => parts.push("x".into()),
            e => parts.push(format!("x^{e}")),
        }
        match k {
            0 => {}
            1 => parts.push("y".into()),
            e => parts.push(format!("y^{e}")),
        }
        terms.push(parts.join("*"));
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn family_polynomial(family: Family, p: u64, raw: bool) -> Result<HWPolynomial> {
    if family.is_excluded(p) {
        return Err(Error::Rejected(format!("prime {p} is excluded for family {}", family.name())));
    }
    coefficient_polynomial(family, p, raw)
}

/// `Σ m_k y^k x^(p-1-dk)` with the family's `m_k` reduced mod `p`, defined at
/// every prime: `dk < p` keeps the factorial ratios `p`-integral. At excluded
/// primes this is only the formal table entry, not a Hasse–Witt invariant.
pub fn hw_formal(family: Family, p: u64) -> Result<HWPolynomial> {
    coefficient_polynomial(family, p, false)
}

fn coefficient_polynomial(family: Family, p: u64, raw: bool) -> Result<HWPolynomial> {
    let field = PrimeField::new(p)?;
    let d = family.step();
    let kmax = ((p - 1) / d) as usize;
    let coeffs = (0..=kmax)
        .map(|k| {
            let m = factorial_ratio(family, k).mod_p(p).expect("factorial ratio is p-integral below p");
            if raw {
                let w = mod_pow(d % p, p - 1 - d * k as u64, p);
                field.mul(&m, &w)
            } else {
                m
            }
        })
        .collect();
    Ok(HWPolynomial { p, step: d, coeffs })
}

/// Dwork family of `n`-folds: `m_k = ((n+2)k)!/(k!)^(n+2) mod p`. With
/// `raw`, the `(n+2)^(p-1-(n+2)k)` weights are kept rather than absorbed into `x`.
pub fn hw_dwork(n: u32, p: u64, raw: bool) -> Result<HWPolynomial> {
    if n == 0 {
        return Err(Error::Rejected("dimension must be positive".into()));
    }
    family_polynomial(Family::Dwork(n), p, raw)
}

/// The weighted-projective families.
pub fn hw_weighted(family: Family, p: u64) -> Result<HWPolynomial> {
    if matches!(family, Family::Dwork(_)) {
        return Err(Error::Rejected("use hw_dwork for Dwork families".into()));
    }
    family_polynomial(family, p, false)
}

fn inv_factorials(m: u64, p: u64) -> Vec<u64> {
    let mut f = vec![1u64; m as usize + 1];
    for i in 1..=m as usize {
        f[i] = f[i - 1] * i as u64 % p;
    }
    f.iter().map(|&v| mod_inverse(v, p).expect("factorial below p is a unit")).collect()
}

/// Coefficient of `x^(p-1)` in `(4x³ - t₂x - t₃)^((p-1)/2)` as a weighted
/// polynomial in `t₂, t₃`.
pub fn hw_weierstrass(p: u64) -> Result<WeightedHWPolynomial> {
    let field = PrimeField::new(p)?;
    if p < 5 {
        return Err(Error::Rejected(format!("Weierstrass Hasse-Witt needs p >= 5, got {p}")));
    }
    let m = (p - 1) / 2;
    let inv = inv_factorials(m, p);
    let fact_m = (1..=m).fold(1u64, |acc, i| acc * i % p);
    let mut monomials = Vec::new();
    for a in 0..=m {
        // 3a + b = p - 1 and a + b + c = m
        let Some(b) = (p - 1).checked_sub(3 * a) else { continue };
        let Some(c) = m.checked_sub(a + b) else { continue };
        let multinomial = fact_m * inv[a as usize] % p * inv[b as usize] % p * inv[c as usize] % p;
        let mut v = multinomial * mod_pow(4, a, p) % p;
        if (b + c) % 2 == 1 {
            v = field.neg(&v);
        }
        if v != 0 {
            monomials.push((b, c, v));
        }
    }
    monomials.sort();
    Ok(WeightedHWPolynomial { p, monomials })
}

/// Legendre family `y² = x(x-1)(x-z)`: the truncated hypergeometric form
/// `(-1)^((p-1)/2) Σ_{k≤(p-1)/2} ((1/2)_k/k!)² z^k`, checked against direct
/// extraction of the `x^(p-1)` coefficient of `(x(x-1)(x-z))^((p-1)/2)`.
pub fn hw_legendre(p: u64) -> Result<FpPoly> {
    let field = PrimeField::new(p)?;
    if p == 2 {
        return Err(Error::Rejected("Legendre Hasse-Witt needs an odd prime".into()));
    }
    let m = (p - 1) / 2;
    let sign = if m % 2 == 1 { p - 1 } else { 1 };

    let inv2 = mod_inverse(2, p).unwrap();
    let mut hyper = Vec::with_capacity(m as usize + 1);
    let mut term = 1u64;
    for k in 0..=m {
        hyper.push(field.mul(&term, &sign));
        // ((1/2 + k)/(k + 1))^2
        let num = (inv2 + k) % p;
        let den = mod_inverse(k + 1, p).unwrap_or(0);
        let r = num * den % p;
        term = term * r % p * r % p;
    }
    let hyper = Poly::new(field, hyper);

    // bivariate product, outer index = power of x, inner polynomial in z
    let zpoly = |c: &[u64]| Poly::new(field, c.to_vec());
    let cubic = [zpoly(&[]), zpoly(&[0, 1]), zpoly(&[p - 1, p - 1]), zpoly(&[1])];
    let mut prod: Vec<FpPoly> = vec![zpoly(&[1])];
    for _ in 0..m {
        let mut next = vec![zpoly(&[]); prod.len() + 3];
        for (i, a) in prod.iter().enumerate() {
            for (j, b) in cubic.iter().enumerate() {
                next[i + j] = next[i + j].add(&a.mul(b));
            }
        }
        prod = next;
    }
    let extracted = prod.get((p - 1) as usize).cloned().unwrap_or_else(|| zpoly(&[]));
    if extracted != hyper {
        return Err(Error::Inconsistent(format!("Legendre Hasse-Witt formulas disagree at p = {p}")));
    }
    Ok(hyper)
}

/// `Σ_{k<p} (c_k mod p) z^k` for the holomorphic period `Σ c_k z^k`.
pub fn hw_truncation(op: &WeylOperator, p: u64) -> Result<FpPoly> {
    let field = PrimeField::new(p)?;
    let f = holomorphic_solution(op, p as usize)?.reduce_mod_p(field)?;
    Ok(Poly::new(field, f.into_coeffs()))
}

/// Factor a Hasse-Witt polynomial into rehomogenized irreducibles.
pub fn factor_hw(h: &HWPolynomial, seed: u64) -> FactorizationResult {
    let field = PrimeField::new(h.p).expect("prime");
    let f = h.dehomogenize();
    let Some(deg) = f.degree() else {
        return FactorizationResult { p: h.p, step: h.step, unit: 0, x_power: 0, factors: Vec::new() };
    };
    let x_power = h.p - 1 - h.step * deg as u64;
    let (mut unit, monic) = factor_monic(&f, seed);
    let mut factors = Vec::with_capacity(monic.len());
    for (g, e) in monic {
        let c0 = g.coeff(0);
        if c0 == 0 {
            factors.push((g, e));
            continue;
        }
        let c0inv = field.inv(&c0).unwrap();
        unit = field.mul(&unit, &mod_pow(c0, e as u64, h.p));
        factors.push((g.scale(&c0inv), e));
    }
    factors.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    FactorizationResult { p: h.p, step: h.step, unit, x_power, factors }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dwork_small_primes() {
        assert_eq!(hw_dwork(3, 7, false).unwrap().coeffs, vec![1, 1]);
        assert_eq!(hw_dwork(3, 11, false).unwrap().coeffs, vec![1, 10, 1]);
        assert_eq!(hw_dwork(3, 2, false).unwrap().render(), "x");
        assert!(hw_dwork(3, 5, false).is_err());
        // the formal polynomial exists at excluded primes and agrees elsewhere
        assert_eq!(hw_formal(Family::Dwork(3), 5).unwrap().render(), "x^4");
        assert_eq!(hw_formal(Family::Dwork(3), 13).unwrap(), hw_dwork(3, 13, false).unwrap());
        // raw form keeps 5^(p-1-5k): at p = 7, k = 1 the weight is 5
        assert_eq!(hw_dwork(3, 7, true).unwrap().coeffs, vec![1, 5]);
    }

    #[test]
    fn weighted_examples() {
        // 15120 = 6 mod 11, 360 = 3 mod 7
        assert_eq!(hw_weighted(Family::Wp10, 11).unwrap().coeffs, vec![1, 6]);
        assert_eq!(hw_weighted(Family::Wp6, 7).unwrap().coeffs, vec![1, 3]);
        assert_eq!(hw_weighted(Family::Wp8, 3).unwrap().coeffs, vec![1]);
        assert!(hw_weighted(Family::Wp10, 5).is_err());
    }

    #[test]
    fn weierstrass_weights() {
        assert_eq!(hw_weierstrass(5).unwrap().monomials, vec![(1, 0, 2)]);
        assert_eq!(hw_weierstrass(7).unwrap().monomials, vec![(0, 1, 1)]);
        for p in [11u64, 13, 101] {
            assert!(hw_weierstrass(p).unwrap().monomials.iter().all(|&(b, c, _)| 4 * b + 6 * c == p - 1));
        }
        assert!(hw_weierstrass(3).is_err());
    }

    #[test]
    fn legendre_examples() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(hw_legendre(5).unwrap(), Poly::new(f5, vec![1, 4, 1]));
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(hw_legendre(3).unwrap(), Poly::new(f3, vec![2, 2]));
        for p in crate::arith::primes_up_to(100).into_iter().skip(1) {
            hw_legendre(p).unwrap();
        }
    }

    #[test]
    fn table_rendering() {
        let r = factor_hw(&hw_dwork(3, 13, false).unwrap(), 0);
        assert_eq!(r.render(), "x^2*(x^10+3*x^5*y+y^2)");
        let r = factor_hw(&hw_dwork(3, 17, false).unwrap(), 0);
        assert_eq!(r.render(), "x*(x^5+16*y)*(x^10+2*x^5*y+12*y^2)");
        assert_eq!(r.expand(), hw_dwork(3, 17, false).unwrap());
        assert_eq!(factor_hw(&hw_dwork(3, 11, false).unwrap(), 0).render(), "x^10+10*x^5*y+y^2");
    }
}
