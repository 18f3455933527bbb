//! Bundled operators with their verification metadata.

use serde::{Deserialize, Serialize};

use crate::arith::{Family, Rational};
use crate::diffop::{parse_weyl, Point, WeylOperator};
use crate::error::{Error, Result};

/// Sign convention for the Hasse-Witt invariant `A_p = ±ϖ₀^(p-1) · trunc`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HwSign {
    /// No sign.
    #[default]
    Plus,
    /// `(-1)^((p-1)/2)`, the elliptic Legendre convention.
    Legendre,
}

impl HwSign {
    /// `±1` as an element of `F_p`.
    pub fn value_mod(&self, p: u64) -> u64 {
        match self {
            HwSign::Legendre if p % 4 == 3 => p - 1,
            _ => 1 % p,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    /// Compare inert-prime `A_p` against `sqrt(1 - 25000 z)^p`.
    #[serde(default)]
    pub sqrt_conjecture: bool,
    /// Has a second MUM point at infinity.
    #[serde(default)]
    pub dual_mum: bool,
}

/// An operator together with the data the verification harness needs.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSpec {
    pub id: String,
    pub name: String,
    pub op: WeylOperator,
    pub kappa: Rational,
    pub excluded_primes: Vec<u64>,
    pub hw_sign: HwSign,
    pub flags: Flags,
}

impl OperatorSpec {
    /// Validate MUM at zero and assemble.
    pub fn new(
        id: impl Into<String>,
        name: impl Into<String>,
        op: WeylOperator,
        kappa: Rational,
        excluded_primes: Vec<u64>,
        hw_sign: HwSign,
        flags: Flags,
    ) -> Result<Self> {
        let id = id.into();
        if !op.is_mum(Point::Zero) {
            return Err(Error::Rejected(format!(
                "operator `{id}` is not MUM at 0; indicial polynomial {}",
                op.indicial().format_with("s")
            )));
        }
        if kappa.is_zero() {
            return Err(Error::Rejected(format!("operator `{id}` has zero mirror scale")));
        }
        Ok(OperatorSpec { id, name: name.into(), op, kappa, excluded_primes, hw_sign, flags })
    }

    /// Primes usable for congruence checks: not excluded and not dividing κ.
    pub fn admits(&self, p: u64) -> bool {
        !self.excluded_primes.contains(&p) && self.kappa.mod_p(p).is_some_and(|k| k != 0)
    }

    /// The first `count` admissible primes.
    pub fn admissible_primes(&self, count: usize) -> Vec<u64> {
        crate::arith::first_primes_where(count, |p| self.admits(p))
    }
}

struct Entry {
    id: &'static str,
    name: &'static str,
    expr: &'static str,
    kappa: i64,
    excluded: &'static [u64],
    hw_sign: HwSign,
    flags: Flags,
}

const PLAIN: Flags = Flags { sqrt_conjecture: false, dual_mum: false };

const ENTRIES: &[Entry] = &[
    Entry {
        id: "legendre",
        name: "Legendre family of elliptic curves",
        expr: "4*theta^2 - z*(2*theta+1)^2",
        kappa: 16,
        excluded: &[2],
        hw_sign: HwSign::Legendre,
        flags: PLAIN,
    },
    Entry {
        id: "dwork1",
        name: "Dwork family, cubic curves",
        expr: "theta^2 - 3*z*(3*theta+1)*(3*theta+2)",
        kappa: 1,
        excluded: &[3],
        hw_sign: HwSign::Plus,
        flags: PLAIN,
    },
    Entry {
        id: "dwork2",
        name: "Dwork family, quartic K3 surfaces",
        expr: "theta^3 - 4*z*(4*theta+1)*(4*theta+2)*(4*theta+3)",
        kappa: 1,
        excluded: &[2],
        hw_sign: HwSign::Plus,
        flags: PLAIN,
    },
    Entry {
        id: "dwork3",
        name: "Dwork family, mirror quintic",
        expr: "theta^4 - 5*z*(5*theta+1)*(5*theta+2)*(5*theta+3)*(5*theta+4)",
        kappa: 1,
        excluded: &[5],
        hw_sign: HwSign::Plus,
        flags: PLAIN,
    },
    Entry {
        id: "dwork4",
        name: "Dwork family, sextic fourfolds",
        expr: "theta^5 - 6*z*(6*theta+1)*(6*theta+2)*(6*theta+3)*(6*theta+4)*(6*theta+5)",
        kappa: 1,
        excluded: &[2, 3],
        hw_sign: HwSign::Plus,
        flags: PLAIN,
    },
    Entry {
        id: "wp10",
        name: "degree-10 hypersurface in P(1,1,1,2,5)",
        expr: "theta^4 - 80*z*(10*theta+1)*(10*theta+3)*(10*theta+7)*(10*theta+9)",
        kappa: 1,
        excluded: &[2, 5],
        hw_sign: HwSign::Plus,
        flags: PLAIN,
    },
    Entry {
        id: "wp8",
        name: "degree-8 hypersurface in P(1,1,1,1,4)",
        expr: "theta^4 - 16*z*(8*theta+1)*(8*theta+3)*(8*theta+5)*(8*theta+7)",
        kappa: 1,
        excluded: &[2],
        hw_sign: HwSign::Plus,
        flags: PLAIN,
    },
    Entry {
        id: "wp6",
        name: "degree-6 hypersurface in P(1,1,1,1,2)",
        expr: "theta^4 - 9*z*(6*theta+1)*(6*theta+2)*(6*theta+4)*(6*theta+5)",
        kappa: 1,
        excluded: &[2, 3],
        hw_sign: HwSign::Plus,
        flags: PLAIN,
    },
    Entry {
        id: "ell",
        name: "order-4 operator with a sqrt(1 - 25000 z) Hasse-Witt pattern",
        expr: "theta^4 - 2*5*z*(10000*theta^4 + 12500*theta^3 + 9500*theta^2 + 3250*theta + 399) \
               + 2^2*5^8*z^2*(2400*theta^4 + 6000*theta^3 + 6290*theta^2 + 2800*theta + 399) \
               - 2^5*5^14*z^3*(4*theta + 3)*(80*theta^3 + 240*theta^2 + 221*theta + 42) \
               + 2^4*5^20*z^4*(4*theta + 1)*(4*theta + 3)*(4*theta + 7)*(4*theta + 9)",
        kappa: 1,
        excluded: &[],
        hw_sign: HwSign::Plus,
        flags: Flags { sqrt_conjecture: true, dual_mum: false },
    },
    Entry {
        id: "rodland",
        name: "Rodland operator (two MUM points)",
        expr: "9*theta^4 - 3*z*(173*theta^4 + 340*theta^3 + 272*theta^2 + 102*theta + 15) \
               - 2*z^2*(1129*theta^4 + 5032*theta^3 + 7597*theta^2 + 4773*theta + 1083) \
               + 2*z^3*(843*theta^4 + 2628*theta^3 + 2353*theta^2 + 675*theta + 6) \
               - z^4*(295*theta^4 + 608*theta^3 + 478*theta^2 + 174*theta + 26) \
               + z^5*(theta + 1)^4",
        kappa: 1,
        excluded: &[],
        hw_sign: HwSign::Plus,
        flags: Flags { sqrt_conjecture: false, dual_mum: true },
    },
];

fn build(e: &Entry) -> OperatorSpec {
    let op = parse_weyl(e.expr).expect("bundled operator parses");
    OperatorSpec::new(e.id, e.name, op, Rational::from_i64(e.kappa), e.excluded.to_vec(), e.hw_sign, e.flags)
        .expect("bundled operator is MUM at 0")
}

/// All bundled operators, in a fixed order.
pub fn bundled() -> Vec<OperatorSpec> {
    ENTRIES.iter().map(build).collect()
}

/// Bundled operator by id.
pub fn lookup(id: &str) -> Option<OperatorSpec> {
    ENTRIES.iter().find(|e| e.id == id).map(build)
}

/// The hypergeometric operator whose holomorphic period has coefficients
/// `family.factorial_ratio(k)`.
pub fn family_operator(family: Family) -> OperatorSpec {
    let id = match family {
        Family::Dwork(n) => format!("dwork{n}"),
        other => other.name(),
    };
    lookup(&id).unwrap_or_else(|| {
        let Family::Dwork(n) = family else { unreachable!("weighted families are bundled") };
        let m = n as i64 + 2;
        let factors: String = (1..m).map(|i| format!("*({m}*theta+{i})")).collect();
        let op = parse_weyl(&format!("theta^{} - {m}*z{factors}", n + 1)).expect("generated operator parses");
        let excluded = crate::arith::primes_up_to(m as u64).into_iter().filter(|p| (m as u64).is_multiple_of(*p)).collect();
        OperatorSpec::new(id, format!("Dwork family, n = {n}"), op, Rational::one(), excluded, HwSign::Plus, PLAIN)
            .expect("Dwork operators are MUM at 0")
    })
}
