use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::rational::Rational;
use crate::error::{Error, Result};

/// The hypergeometric families whose holomorphic periods are factorial ratios.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Dwork family of n-folds: `((n+2)k)! / (k!)^(n+2)`.
    Dwork(u32),
    /// Hypersurface in P(5,2,1,1,1): `(10k)! / ((k!)^3 (2k)! (5k)!)`.
    Wp10,
    /// Hypersurface in P(4,1,1,1,1): `(8k)! / ((k!)^4 (4k)!)`.
    Wp8,
    /// Hypersurface in P(1,1,1,2,1): `(6k)! / ((k!)^4 (2k)!)`.
    Wp6,
}

impl Family {
    /// Degree step `d` of the Hasse-Witt polynomial `sum m_k y^k x^(p-1-dk)`.
    pub fn step(&self) -> u64 {
        match self {
            Family::Dwork(n) => *n as u64 + 2,
            Family::Wp10 => 10,
            Family::Wp8 => 8,
            Family::Wp6 => 6,
        }
    }

    /// Primes at which the family's closed form is not defined.
    pub fn is_excluded(&self, p: u64) -> bool {
        match self {
            Family::Dwork(n) => (*n as u64 + 2).is_multiple_of(p),
            Family::Wp10 => 10 % p == 0,
            Family::Wp8 => p == 2,
            Family::Wp6 => 6 % p == 0,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Family::Dwork(n) => format!("dwork{n}"),
            Family::Wp10 => "wp10".into(),
            Family::Wp8 => "wp8".into(),
            Family::Wp6 => "wp6".into(),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wp10" => Ok(Family::Wp10),
            "wp8" => Ok(Family::Wp8),
            "wp6" => Ok(Family::Wp6),
            _ => s
                .strip_prefix("dwork")
                .and_then(|n| n.parse::<u32>().ok())
                .filter(|&n| n >= 1)
                .map(Family::Dwork)
                .ok_or_else(|| Error::Rejected(format!("unknown family `{s}`"))),
        }
    }
}

fn factorial_cache() -> &'static RwLock<Vec<BigInt>> {
    static CACHE: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![BigInt::one()]))
}

/// `n!`, memoised across threads.
pub fn factorial(n: usize) -> BigInt {
    {
        let cache = factorial_cache().read().unwrap();
        if let Some(f) = cache.get(n) {
            return f.clone();
        }
    }
    let mut cache = factorial_cache().write().unwrap();
    while cache.len() <= n {
        let next = cache.last().unwrap() * BigInt::from(cache.len());
        cache.push(next);
    }
    cache[n].clone()
}

/// Exact value of the family's factorial ratio at index `k`.
pub fn factorial_ratio(family: Family, k: usize) -> Rational {
    let f = factorial;
    let (num, den) = match family {
        Family::Dwork(n) => {
            let d = n as usize + 2;
            (f(d * k), num_traits::pow(f(k), d))
        }
        Family::Wp10 => (f(10 * k), num_traits::pow(f(k), 3) * f(2 * k) * f(5 * k)),
        Family::Wp8 => (f(8 * k), num_traits::pow(f(k), 4) * f(4 * k)),
        Family::Wp6 => (f(6 * k), num_traits::pow(f(k), 4) * f(2 * k)),
    };
    Rational::new(num, den)
}

fn bernoulli_cache() -> &'static RwLock<Vec<Rational>> {
    static CACHE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(Vec::new()))
}

/// Bernoulli numbers `B_0..=B_n` by the Akiyama-Tanigawa recurrence
/// (so `B_1 = +1/2`; only even indices are used downstream).
fn bernoulli_table(n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut a: Vec<Rational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(Rational::frac(1, m as i64 + 1));
        for j in (1..=m).rev() {
            let diff = &a[j - 1] - &a[j];
            a[j - 1] = diff.mul_i64(j as i64);
        }
        out.push(a[0].clone());
    }
    out
}

pub fn bernoulli(k: usize) -> Rational {
    {
        let cache = bernoulli_cache().read().unwrap();
        if let Some(b) = cache.get(k) {
            return b.clone();
        }
    }
    let table = bernoulli_table(k.max(16));
    let mut cache = bernoulli_cache().write().unwrap();
    if cache.len() < table.len() {
        *cache = table;
    }
    cache[k].clone()
}

/// Divisor power sum `sigma_e(n)`.
pub fn divisor_sigma(e: u32, n: u64) -> BigInt {
    let mut total = BigInt::from(0);
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += num_traits::pow(BigInt::from(d), e as usize);
            let other = n / d;
            if other != d {
                total += num_traits::pow(BigInt::from(other), e as usize);
            }
        }
        d += 1;
    }
    total
}

/// `(B_k, sigma_{k-1}(n))` for even `k >= 2`.
pub fn bernoulli_and_sigma(k: usize, n: u64) -> Result<(Rational, BigInt)> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::Rejected(format!("weight {k} must be even and at least 2")));
    }
    if n == 0 {
        return Err(Error::Rejected("n must be positive".into()));
    }
    Ok((bernoulli(k), divisor_sigma(k as u32 - 1, n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pochhammer(a: &Rational, k: usize) -> Rational {
        (0..k).fold(Rational::one(), |acc, i| acc * (a + &Rational::from_i64(i as i64)))
    }

    /// `prod_i (a_i)_k / (k!)^r * C^k` with the family's Pochhammer parameters.
    fn pochhammer_form(family: Family, k: usize) -> Rational {
        let (params, scale): (Vec<Rational>, Rational) = match family {
            Family::Dwork(n) => {
                let d = n as i64 + 2;
                ((1..d).map(|i| Rational::frac(i, d)).collect(), Rational::from_i64(d).pow(d as u32))
            }
            Family::Wp10 => (
                [1, 9, 3, 7].iter().map(|&i| Rational::frac(i, 10)).collect(),
                Rational::from_i64(10i64.pow(3) * 5i64.pow(2) * 2i64.pow(5)),
            ),
            Family::Wp8 => {
                ([1, 7, 3, 5].iter().map(|&i| Rational::frac(i, 8)).collect(), Rational::from_i64(8i64.pow(4) * 2i64.pow(4)))
            }
            Family::Wp6 => {
                ([1, 5, 2, 4].iter().map(|&i| Rational::frac(i, 6)).collect(), Rational::from_i64(6i64.pow(4) * 3i64.pow(2)))
            }
        };
        let kfact = Rational::from_integer(factorial(k));
        let mut acc = scale.pow(k as u32);
        for a in &params {
            acc = acc * pochhammer(a, k);
        }
        let r = params.len() as u32;
        acc / kfact.pow(r)
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(factorial_ratio(Family::Dwork(3), 1), Rational::from_i64(120));
        assert_eq!(factorial_ratio(Family::Dwork(3), 0), Rational::one());
        assert_eq!(factorial_ratio(Family::Wp10, 1), Rational::from_i64(15120));
        assert_eq!(factorial_ratio(Family::Wp8, 1), Rational::from_i64(1680));
        assert_eq!(factorial_ratio(Family::Wp6, 1), Rational::from_i64(360));
    }

    #[test]
    fn ratios_match_pochhammer_products() {
        for fam in
            [Family::Dwork(1), Family::Dwork(2), Family::Dwork(3), Family::Dwork(4), Family::Wp10, Family::Wp8, Family::Wp6]
        {
            for k in 0..=50 {
                let r = factorial_ratio(fam, k);
                assert!(r.is_integer());
                assert_eq!(r, pochhammer_form(fam, k), "{fam:?} k={k}");
            }
        }
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli_and_sigma(4, 1).unwrap(), (Rational::frac(-1, 30), BigInt::from(1)));
        assert_eq!(bernoulli_and_sigma(4, 2).unwrap(), (Rational::frac(-1, 30), BigInt::from(9)));
        assert_eq!(bernoulli_and_sigma(6, 1).unwrap().0, Rational::frac(1, 42));
        assert_eq!(bernoulli(12), Rational::frac(-691, 2730));
        assert!(bernoulli_and_sigma(5, 1).is_err());
    }

    #[test]
    fn family_names_round_trip() {
        for fam in [Family::Dwork(3), Family::Wp10, Family::Wp8, Family::Wp6] {
            assert_eq!(fam.name().parse::<Family>().unwrap(), fam);
        }
        assert!("dwork0".parse::<Family>().is_err());
    }
}
