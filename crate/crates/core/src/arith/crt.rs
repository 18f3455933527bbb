use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::mod_pow;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Chinese remainder combination of `(residue, prime)` pairs.
///
/// Returns `(r, M)` with `M` the product of the moduli and `0 <= r < M`.
pub fn crt_combine(residues: &[(BigInt, u64)]) -> Result<(BigInt, BigInt)> {
    let mut seen = std::collections::BTreeSet::new();
    let mut r = BigInt::zero();
    let mut m = BigInt::one();
    for (res, p) in residues {
        if *p < 2 {
            return Err(Error::Rejected(format!("modulus {p} is not prime")));
        }
        if !seen.insert(*p) {
            return Err(Error::Rejected(format!("duplicate modulus {p}")));
        }
        let pb = BigInt::from(*p);
        let res = res.mod_floor(&pb);
        // Solve r + m*t = res (mod p).
        let m_mod = (&m % &pb).try_into().unwrap_or(0u64);
        let m_inv = super::field::mod_inverse(m_mod, *p)
            .ok_or_else(|| Error::Rejected(format!("modulus {p} is not coprime to the others")))?;
        let diff: u64 = (&res - &r).mod_floor(&pb).try_into().unwrap();
        let t = (diff as u128 * m_inv as u128 % *p as u128) as u64;
        r += &m * t;
        m *= &pb;
    }
    Ok((r, m))
}

/// Balanced bound `floor(sqrt(M/2))` used by [`rational_reconstruction`].
pub fn reconstruction_bound(m: &BigInt) -> BigInt {
    (m / 2u32).sqrt()
}

/// Recover `n/d` with `n = r d (mod M)` and `|n|, d <= floor(sqrt(M/2))`,
/// stopping the extended Euclidean remainder sequence at the bound.
pub fn rational_reconstruction(r: &BigInt, m: &BigInt) -> Option<Rational> {
    if !m.is_positive() {
        return None;
    }
    let bound = reconstruction_bound(m);
    let r = r.mod_floor(m);
    let (mut r0, mut r1) = (m.clone(), r);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let (n, d) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    if !n.gcd(&d).is_one() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// How a rational prime behaves in Q(sqrt(-5)).
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

/// Classify `p` by Euler's criterion for the Legendre symbol (-5 | p).
pub fn splitting_in_q_sqrt_m5(p: u64) -> Splitting {
    if p == 2 || p == 5 {
        return Splitting::Ramified;
    }
    let minus5 = (p - 5 % p) % p;
    match mod_pow(minus5, (p - 1) / 2, p) {
        1 => Splitting::Split,
        _ => Splitting::Inert,
    }
}

pub fn inert_in_q_sqrt_m5(p: u64) -> bool {
    splitting_in_q_sqrt_m5(p) == Splitting::Inert
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes::primes_up_to;

    fn combine(pairs: &[(i64, u64)]) -> Result<(BigInt, BigInt)> {
        let v: Vec<_> = pairs.iter().map(|&(r, p)| (BigInt::from(r), p)).collect();
        crt_combine(&v)
    }

    #[test]
    fn crt_examples() {
        assert_eq!(combine(&[(2, 3), (3, 5)]).unwrap(), (BigInt::from(8), BigInt::from(15)));
        assert_eq!(combine(&[(0, 7)]).unwrap(), (BigInt::from(0), BigInt::from(7)));
        // brute-force scan of 0..1001
        let expected = (0..1001i64).find(|r| r % 7 == 5 && r % 11 == 10 && r % 13 == 3).unwrap();
        assert_eq!(combine(&[(5, 7), (10, 11), (3, 13)]).unwrap(), (BigInt::from(expected), BigInt::from(1001)));
        assert!(combine(&[(1, 7), (2, 7)]).is_err());
    }

    #[test]
    fn reconstruction_examples() {
        let m = BigInt::from(10007u64 * 10009);
        let inv7 = BigInt::from(7).modinv(&m).unwrap();
        let r = (BigInt::from(22) * inv7) % &m;
        assert_eq!(rational_reconstruction(&r, &m), Some(Rational::frac(22, 7)));

        assert_eq!(rational_reconstruction(&BigInt::from(5), &BigInt::from(1_000_003)), Some(Rational::from_i64(5)));

        let ps: Vec<u64> = primes_up_to(20_000).into_iter().filter(|&p| p > 10_000).take(10).collect();
        let m: BigInt = ps.iter().map(|&p| BigInt::from(p)).product();
        let r = BigInt::from(-12500).mod_floor(&m);
        assert_eq!(rational_reconstruction(&r, &m), Some(Rational::from_i64(-12500)));
    }

    #[test]
    fn reconstruction_fails_beyond_bound() {
        // 100/3 mod 101*103: bound is floor(sqrt(5201.5)) = 72 < 100.
        let m = BigInt::from(101 * 103);
        let r = (BigInt::from(100) * BigInt::from(3).modinv(&m).unwrap()) % &m;
        let got = rational_reconstruction(&r, &m);
        assert_ne!(got, Some(Rational::frac(100, 3)));
    }

    #[test]
    fn splitting_examples() {
        assert!(inert_in_q_sqrt_m5(11));
        assert!(!inert_in_q_sqrt_m5(7));
        assert_eq!(splitting_in_q_sqrt_m5(2), Splitting::Ramified);
        assert_eq!(splitting_in_q_sqrt_m5(5), Splitting::Ramified);
        assert!(inert_in_q_sqrt_m5(13));
        assert_eq!(splitting_in_q_sqrt_m5(23), Splitting::Split);
    }

    #[test]
    fn splitting_matches_square_search() {
        for p in primes_up_to(10_000) {
            if p == 2 || p == 5 {
                continue;
            }
            let target = (p - 5 % p) % p;
            let has_root = (0..p).any(|x| x * x % p == target);
            assert_eq!(inert_in_q_sqrt_m5(p), !has_root, "p = {p}");
        }
    }
}
