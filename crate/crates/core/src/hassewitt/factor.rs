//! Factorization in `F_p[y]`: squarefree decomposition, distinct-degree
//! splitting, then Cantor–Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::PrimeField;
use crate::poly::Poly;

pub type FpPoly = Poly<PrimeField>;

fn one(f: PrimeField) -> FpPoly {
    Poly::constant(f, 1)
}

fn is_one(g: &FpPoly) -> bool {
    g.degree() == Some(0) && g.coeffs()[0] == 1
}

fn exact_div(a: &FpPoly, b: &FpPoly) -> FpPoly {
    a.div_rem(b).expect("nonzero divisor").0
}

fn mulmod(a: &FpPoly, b: &FpPoly, m: &FpPoly) -> FpPoly {
    a.mul(b).rem(m).expect("nonzero modulus")
}

/// `base^e mod m` with an arbitrary-size exponent.
pub fn powmod(base: &FpPoly, e: &BigUint, m: &FpPoly) -> FpPoly {
    let mut acc = one(*base.ring()).rem(m).unwrap();
    let b = base.rem(m).unwrap();
    for i in (0..e.bits()).rev() {
        acc = mulmod(&acc, &acc, m);
        if e.bit(i) {
            acc = mulmod(&acc, &b, m);
        }
    }
    acc
}

/// `g(y)` with `f(y) = g(y)^p`, for `f` whose exponents are all multiples of `p`.
fn pth_root(f: &FpPoly) -> FpPoly {
    let p = f.ring().p() as usize;
    let c: Vec<u64> = f.coeffs().iter().step_by(p).cloned().collect();
    Poly::new(*f.ring(), c)
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, e)` with the
/// `g` squarefree, pairwise coprime and `f = Π g^e`.
pub fn squarefree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let field = *f.ring();
    let p = field.p() as usize;
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let d = f.derivative();
    let mut c = f.gcd(&d);
    let mut w = exact_div(f, &c);
    let mut i = 1;
    while !is_one(&w) {
        let y = w.gcd(&c);
        let z = exact_div(&w, &y);
        if !is_one(&z) {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = exact_div(&c, &w);
    }
    if !is_one(&c) {
        for (g, e) in squarefree(&pth_root(&c)) {
            out.push((g, e * p));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial: pairs
/// `(g, d)` where `g` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let field = *f.ring();
    let p = BigUint::from(field.p());
    let x = Poly::x(field);
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut h = x.rem(&g).unwrap();
    let mut d = 1;
    while g.degree().unwrap_or(0) >= 2 * d {
        h = powmod(&h, &p, &g);
        let t = g.gcd(&h.sub(&x));
        if !is_one(&t) {
            out.push((t.clone(), d));
            g = exact_div(&g, &t);
            h = h.rem(&g).unwrap();
        }
        d += 1;
    }
    if g.degree().unwrap_or(0) > 0 {
        let deg = g.degree().unwrap();
        out.push((g, deg));
    }
    out
}

fn random_poly(field: PrimeField, below: usize, rng: &mut ChaCha8Rng) -> FpPoly {
    let c = (0..below).map(|_| rng.gen_range(0..field.p())).collect();
    Poly::new(field, c)
}

/// Split a product of distinct monic irreducibles of degree `d` into its factors.
pub fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let n = f.degree().unwrap_or(0);
    if n <= d {
        return vec![f.clone()];
    }
    let field = *f.ring();
    let p = field.p();
    loop {
        let a = random_poly(field, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut t = a.rem(f).unwrap();
            let mut acc = t.clone();
            for _ in 1..d {
                t = mulmod(&t, &t, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (num_traits::pow(BigUint::from(p), d) - 1u32) / 2u32;
            powmod(&a, &e, f).sub(&one(field))
        };
        let g = f.gcd(&b);
        let k = g.degree().unwrap_or(0);
        if !g.is_zero() && k > 0 && k < n {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&exact_div(f, &g), d, rng));
            return out;
        }
    }
}

/// Full factorization into monic irreducibles: `(leading coefficient, [(g, e)])`.
/// Factors are sorted by degree then coefficient list, so output does not
/// depend on the random choices.
pub fn factor_monic(f: &FpPoly, seed: u64) -> (u64, Vec<(FpPoly, usize)>) {
    let lc = *f.leading().expect("nonzero polynomial");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (g, e) in squarefree(&f.monic()) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, &mut rng) {
                out.push((irr, e));
            }
        }
    }
    out.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    // a factor of multiplicity p*k + r shows up once per part
    let mut merged: Vec<(FpPoly, usize)> = Vec::with_capacity(out.len());
    for (g, e) in out {
        match merged.last_mut() {
            Some((h, m)) if *h == g => *m += e,
            _ => merged.push((g, e)),
        }
    }
    (lc, merged)
}
