use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Gcd that first reduces the larger operand modulo the smaller one. Binary
/// gcd on operands of very different sizes sheds only a bit per step, which
/// dominates when a huge numerator meets a small denominator.
pub(crate) fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (big, small) = if a.bits() >= b.bits() { (a, b) } else { (b, a) };
    if small.is_zero() {
        return big.abs();
    }
    let r = big % small;
    small.gcd(&r)
}

/// Exact rational number kept in lowest terms with a positive denominator.
///
/// Integer-valued operands skip the gcd entirely; most series that show up in
/// practice (periods, mirror maps, Eisenstein series) are integral, so this is
/// the hot path.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    num: BigInt,
    den: BigInt,
}

impl Rational {
    pub fn new(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = Rational { num, den };
        r.normalize();
        r
    }

    pub fn from_integer(n: BigInt) -> Self {
        Rational { num: n, den: BigInt::one() }
    }

    pub fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn zero() -> Self {
        Rational::from_i64(0)
    }

    pub fn one() -> Self {
        Rational::from_i64(1)
    }

    fn normalize(&mut self) {
        if self.den.is_one() {
            return;
        }
        if self.num.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.num = -std::mem::take(&mut self.num);
            self.den = -std::mem::take(&mut self.den);
        }
        let g = gcd(&self.num, &self.den);
        if !g.is_one() {
            self.num /= &g;
            self.den /= &g;
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational { num: self.num.abs(), den: self.den.clone() }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(Rational::new(self.den.clone(), self.num.clone()))
    }

    pub fn to_integer(&self) -> Option<&BigInt> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    pub fn pow(&self, e: u32) -> Self {
        Rational { num: num_traits::pow(self.num.clone(), e as usize), den: num_traits::pow(self.den.clone(), e as usize) }
    }

    /// Reduction into `Z/p`; `None` when `p` divides the denominator.
    pub fn mod_p(&self, p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let n = self.num.mod_floor(&pb).to_u64().unwrap();
        if self.den.is_one() {
            return Some(n);
        }
        let d = self.den.mod_floor(&pb).to_u64().unwrap();
        let dinv = super::field::mod_inverse(d, p)?;
        Some(((n as u128 * dinv as u128) % p as u128) as u64)
    }

    /// Multiply by a machine integer without touching the denominator's gcd
    /// unless needed.
    pub fn mul_i64(&self, k: i64) -> Self {
        if self.den.is_one() {
            return Rational::from_integer(&self.num * k);
        }
        Rational::new(&self.num * k, self.den.clone())
    }

    pub fn div_i64(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero");
        Rational::new(self.num.clone(), &self.den * k)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_i64(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |_| Error::Parse { pos: 0, msg: format!("invalid rational `{s}`") };
        match s.split_once('/') {
            None => Ok(Rational::from_integer(s.parse::<BigInt>().map_err(bad)?)),
            Some((n, d)) => {
                let n = n.trim().parse::<BigInt>().map_err(bad)?;
                let d = d.trim().parse::<BigInt>().map_err(bad)?;
                if d.is_zero() {
                    return Err(Error::Parse { pos: 0, msg: format!("zero denominator in `{s}`") });
                }
                Ok(Rational::new(n, d))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;

    fn add(self, rhs: &Rational) -> Rational {
        if self.den.is_one() && rhs.den.is_one() {
            return Rational::from_integer(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return Rational::new(&self.num + &rhs.num, self.den.clone());
        }
        Rational::new(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;

    fn sub(self, rhs: &Rational) -> Rational {
        if self.den.is_one() && rhs.den.is_one() {
            return Rational::from_integer(&self.num - &rhs.num);
        }
        if self.den == rhs.den {
            return Rational::new(&self.num - &rhs.num, self.den.clone());
        }
        Rational::new(&self.num * &rhs.den - &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;

    fn mul(self, rhs: &Rational) -> Rational {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Rational::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Rational::from_integer(&self.num * &rhs.num);
        }
        // cross-cancel before multiplying
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let num = (&self.num / &g1) * (&rhs.num / &g2);
        let den = (&self.den / &g2) * (&rhs.den / &g1);
        Rational { num, den }
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;

    #[allow(clippy::suspicious_arithmetic_impl)] // multiply by the reciprocal
    fn div(self, rhs: &Rational) -> Rational {
        let inv = rhs.recip().expect("division by zero rational");
        self * &inv
    }
}

impl Neg for &Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        Rational { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        Rational { num: -self.num, den: self.den }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        if self.den.is_one() && rhs.den.is_one() {
            self.num += &rhs.num;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        if self.den.is_one() && rhs.den.is_one() {
            self.num -= &rhs.num;
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        let mut acc = Rational::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}
