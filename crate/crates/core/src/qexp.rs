//! Classical q-expansions: Eisenstein series, theta constants, eta quotients,
//! the modular lambda function, and the t-coordinates of Dwork families.
//! `q` is a formal variable throughout.

use num_bigint::BigInt;

use crate::arith::{bernoulli_and_sigma, Family, Rational, Rationals};
use crate::catalog::family_operator;
use crate::diffop::mirror_map;
use crate::error::{Error, Result};
use crate::series::{PuiseuxSeries, QSeries};

fn series(coeffs: Vec<Rational>) -> QSeries {
    QSeries::new(Rationals, coeffs)
}

fn from_ints(c: Vec<i64>) -> QSeries {
    QSeries::new(Rationals, c.into_iter().map(Rational::from_i64).collect())
}

/// `E_k = 1 - (2k/B_k) Σ σ_(k-1)(n) q^n`.
pub fn eisenstein(k: usize, n: usize) -> Result<QSeries> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::Rejected(format!("Eisenstein weight must be even and at least 2, got {k}")));
    }
    let mut c = Vec::with_capacity(n);
    if n > 0 {
        c.push(Rational::one());
    }
    for m in 1..n {
        let (b, sigma) = bernoulli_and_sigma(k, m as u64)?;
        let factor = Rational::from_i64(-2 * k as i64) / b;
        c.push(factor * Rational::from_integer(sigma));
    }
    Ok(series(c))
}

/// `θ₃ = Σ_{k∈Z} q^(k²)`.
pub fn theta3(n: usize) -> QSeries {
    let mut c = vec![0i64; n];
    let mut k = 0usize;
    while k * k < n {
        c[k * k] += if k == 0 { 1 } else { 2 };
        k += 1;
    }
    from_ints(c)
}

/// `θ₄ = Σ_{k∈Z} (-1)^k q^(k²)`.
pub fn theta4(n: usize) -> QSeries {
    let mut c = vec![0i64; n];
    let mut k = 0usize;
    while k * k < n {
        let s = if k.is_multiple_of(2) { 1 } else { -1 };
        c[k * k] += if k == 0 { 1 } else { 2 * s };
        k += 1;
    }
    from_ints(c)
}

/// `Σ_{k≥0} q^(k(k+1))`, the tail of `θ₂ = 2 q^(1/4) Σ q^(k(k+1))`.
fn theta2_tail(n: usize) -> QSeries {
    let mut c = vec![0i64; n];
    let mut k = 0usize;
    while k * (k + 1) < n {
        c[k * (k + 1)] += 1;
        k += 1;
    }
    from_ints(c)
}

/// `θ₂` with its `q^(1/4)` prefactor; the tail carries `n` terms.
pub fn theta2(n: usize) -> PuiseuxSeries {
    PuiseuxSeries::new(Rational::frac(1, 4), theta2_tail(n).scale(&Rational::from_i64(2))).expect("valid prefactor")
}

/// `θ₂⁴ = 16 q (Σ q^(k(k+1)))⁴`, to precision `n`.
pub fn theta2_fourth(n: usize) -> QSeries {
    theta2_tail(n).pow_u64(4).scale(&Rational::from_i64(16)).shift(1).truncate(n)
}

/// `Π_{n≥1} (1 - q^n)` by Euler's pentagonal number theorem.
pub fn euler_product(n: usize) -> QSeries {
    let mut c = vec![0i64; n];
    if n > 0 {
        c[0] = 1;
    }
    for k in 1.. {
        let s = if k % 2 == 1 { -1 } else { 1 };
        let a = k * (3 * k - 1) / 2;
        let b = k * (3 * k + 1) / 2;
        if a >= n {
            break;
        }
        c[a] += s;
        if b < n {
            c[b] += s;
        }
    }
    from_ints(c)
}

/// `Π_m η(q^m)^(e_m)`, with prefactor `q^(Σ m e / 24)`. The tail carries `n` terms.
pub fn eta_quotient(factors: &[(u64, i64)], n: usize) -> Result<PuiseuxSeries> {
    let mut tail = QSeries::one(Rationals, n);
    let mut weight = 0i64;
    for &(m, e) in factors {
        if m == 0 {
            return Err(Error::Rejected("eta argument multiplier must be positive".into()));
        }
        let base = euler_product(n).dilate(m as usize);
        tail = tail.mul(&base.pow_i64(e)?);
        weight += m as i64 * e;
    }
    PuiseuxSeries::new(Rational::frac(weight, 24), tail)
}

/// Theta series of the D₄ lattice: `1 + 24 Σ σ_odd(n) q^n`.
pub fn theta_d4(n: usize) -> QSeries {
    let mut c = vec![0i64; n];
    if n > 0 {
        c[0] = 1;
    }
    for (m, slot) in c.iter_mut().enumerate().skip(1) {
        let odd: i64 = (1..=m).filter(|d| m % d == 0 && d % 2 == 1).map(|d| d as i64).sum();
        *slot = 24 * odd;
    }
    from_ints(c)
}

/// `λ(q) = θ₂⁴ / θ₃⁴`.
pub fn lambda_map(n: usize) -> Result<QSeries> {
    theta2_fourth(n).div(&theta3(n).pow_u64(4))
}

/// `(t₁, t_(n+2))` for the Dwork family of `n`-folds: `t₁ = ϖ₀(z(q))` and
/// `t_(n+2) = z(q) ϖ₀(z(q))^(n+2)`, with `κ = 1`.
pub fn dwork_tcoords(n: u32, prec: usize) -> Result<(QSeries, QSeries)> {
    if !(1..=3).contains(&n) {
        return Err(Error::Rejected(format!("t-coordinates are provided for n = 1, 2, 3; got {n}")));
    }
    let spec = family_operator(Family::Dwork(n));
    let m = mirror_map(&spec.op, prec, &Rational::one())?;
    let t1 = m.hol.compose(&m.z_of_q)?;
    let tn = m.z_of_q.mul(&t1.pow_u64(n as u64 + 2));
    Ok((t1, tn))
}

/// `θ₃(q)θ₃(q³) + θ₂(q)θ₂(q³)`; the prefactors `q^(1/4) q^(3/4)` combine to `q`.
pub fn theta_product_level3(n: usize) -> Result<QSeries> {
    let t2 = theta2(n);
    let t2_3 = PuiseuxSeries::new(Rational::frac(3, 4), t2.tail().dilate(3))?;
    let cross = t2.mul(&t2_3)?.to_series()?.truncate(n);
    Ok(theta3(n).mul(&theta3(n).dilate(3)).add(&cross))
}

/// `c` with `a = c·b` to the common precision, if one exists.
pub fn proportionality(a: &QSeries, b: &QSeries) -> Option<Rational> {
    let n = a.precision().min(b.precision());
    let k = b.truncate(n).valuation()?;
    let c = a.coeff(k) / b.coeff(k);
    (0..n).all(|i| *a.coeff(i) == &c * b.coeff(i)).then_some(c)
}

/// Named series for command-line use: `e<k>`, `theta3`, `theta4`,
/// `theta2_4th`, `theta_d4`, `lambda`, `eta:<m>^<e>,...`, `t1_<n>`, `tn_<n>`.
pub fn by_name(name: &str, n: usize) -> Result<String> {
    let plain = |s: QSeries| Ok(s.format_with("q"));
    match name {
        "theta3" => plain(theta3(n)),
        "theta4" => plain(theta4(n)),
        "theta2_4th" => plain(theta2_fourth(n)),
        "theta_d4" => plain(theta_d4(n)),
        "lambda" => plain(lambda_map(n)?),
        _ => {
            if let Some(k) = name.strip_prefix('e').and_then(|k| k.parse::<usize>().ok()) {
                return plain(eisenstein(k, n)?);
            }
            if let Some(spec) = name.strip_prefix("eta:") {
                let factors = parse_eta_spec(spec)?;
                let s = eta_quotient(&factors, n)?;
                return Ok(format!("q^({})*({})", s.exponent(), s.tail().format_with("q")));
            }
            for (prefix, which) in [("t1_", 0), ("tn_", 1)] {
                if let Some(d) = name.strip_prefix(prefix).and_then(|d| d.parse::<u32>().ok()) {
                    let (t1, tn) = dwork_tcoords(d, n)?;
                    return plain(if which == 0 { t1 } else { tn });
                }
            }
            Err(Error::Rejected(format!("unknown series `{name}`")))
        }
    }
}

/// `"3^9,1^-3"` → `[(3, 9), (1, -3)]`.
fn parse_eta_spec(spec: &str) -> Result<Vec<(u64, i64)>> {
    spec.split(',')
        .map(|part| {
            let (m, e) = part.split_once('^').unwrap_or((part, "1"));
            let m = m.trim().parse::<u64>().map_err(|_| Error::Rejected(format!("bad eta multiplier `{m}`")))?;
            let e = e.trim().parse::<i64>().map_err(|_| Error::Rejected(format!("bad eta exponent `{e}`")))?;
            Ok((m, e))
        })
        .collect()
}

/// Divisor-free brute force: number of vectors of squared length `2m` in D₄
/// (integer vectors with even coordinate sum), for `m < n`.
pub fn d4_lattice_count(n: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::from(0); n];
    let r = ((2 * n) as f64).sqrt() as i64 + 1;
    for a in -r..=r {
        for b in -r..=r {
            for cc in -r..=r {
                for d in -r..=r {
                    if (a + b + cc + d).rem_euclid(2) != 0 {
                        continue;
                    }
                    let norm = (a * a + b * b + cc * cc + d * d) as usize;
                    if norm.is_multiple_of(2) && norm / 2 < n {
                        c[norm / 2] += 1;
                    }
                }
            }
        }
    }
    c
}
