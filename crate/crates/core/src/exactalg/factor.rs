use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{Elem, Field};
use super::poly::{poly_gcd, Poly};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorEntry {
    pub poly: Poly,
    pub multiplicity: u32,
    /// Always true over finite fields. Over `Q` a factor of degree >= 4
    /// without rational roots is kept whole and flagged false.
    pub irreducible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Elem,
    pub factors: Vec<FactorEntry>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.factors.iter().all(|e| e.irreducible)
    }

    pub fn expand(&self, field: &Field) -> Poly {
        let mut acc = Poly::constant(field, self.unit.clone());
        for e in &self.factors {
            acc = &acc * &e.poly.pow(e.multiplicity);
        }
        acc
    }
}

/// Factors `f` into monic pieces. The seed drives the equal-degree splitting
/// over finite fields; results are sorted and do not depend on it.
pub fn factor(f: &Poly, seed: u64) -> Result<Factorization> {
    let lc = f
        .leading()
        .cloned()
        .ok_or_else(|| Error::Domain("cannot factor the zero polynomial".into()))?;
    let field = f.field().clone();
    let monic = f.monic();
    let mut factors = match field {
        Field::Rationals => factor_rational(&monic)?,
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::new();
            for (part, mult) in squarefree_finite(&monic)? {
                for (block, d) in distinct_degree(&part)? {
                    for irr in equal_degree(&block, d, &mut rng)? {
                        out.push(FactorEntry { poly: irr, multiplicity: mult, irreducible: true });
                    }
                }
            }
            out
        }
    };
    factors.sort_by(|a, b| poly_key(&a.poly).cmp(&poly_key(&b.poly)).then(a.multiplicity.cmp(&b.multiplicity)));
    // squarefree parts are coprime, but merge defensively
    let mut merged: Vec<FactorEntry> = Vec::new();
    for e in factors {
        match merged.last_mut() {
            Some(last) if last.poly == e.poly => last.multiplicity += e.multiplicity,
            _ => merged.push(e),
        }
    }
    Ok(Factorization { unit: lc, factors: merged })
}

/// Sort key: degree first, then coefficients from the top down.
pub fn poly_key(p: &Poly) -> (usize, Vec<Elem>) {
    let mut c = p.coeffs().to_vec();
    c.reverse();
    (c.len(), c)
}

/// Rabin's irreducibility test over a finite field.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let field = f.field();
    let q = field
        .cardinality_big()
        .ok_or_else(|| Error::Unsupported("irreducibility test needs a finite field".into()))?;
    let n = match f.degree() {
        None | Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    let f = f.monic();
    let t = Poly::t(field);
    let frob = |k: usize| -> Result<Poly> { t.pow_mod(&q.pow(k as u32), &f) };
    for r in prime_divisors(n as u64) {
        let h = &frob(n / r as usize)? - &t;
        if !poly_gcd(&f, &h)?.is_one() {
            return Ok(false);
        }
    }
    Ok((&frob(n)? - &t).rem(&f)?.is_zero())
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pth_root_poly(f: &Poly) -> Result<Poly> {
    let field = f.field();
    let p = field.characteristic() as usize;
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|c| field.pth_root(c))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::from_coeffs(field, coeffs))
}

fn squarefree_finite(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    let p = f.field().characteristic() as u32;
    let mut out = Vec::new();
    if f.is_constant() {
        return Ok(out);
    }
    let d = f.derivative();
    if d.is_zero() {
        for (g, m) in squarefree_finite(&pth_root_poly(f)?)? {
            out.push((g, m * p));
        }
        return Ok(out);
    }
    let mut c = poly_gcd(f, &d)?;
    let mut w = f.exact_div(&c)?;
    let mut i = 1;
    while !w.is_one() {
        let y = poly_gcd(&w, &c)?;
        let z = w.exact_div(&y)?;
        if !z.is_one() {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w)?;
    }
    if !c.is_one() {
        for (g, m) in squarefree_finite(&pth_root_poly(&c.monic())?)? {
            out.push((g, m * p));
        }
    }
    Ok(out)
}

fn distinct_degree(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let field = f.field();
    let q = field.cardinality_big().expect("finite field");
    let t = Poly::t(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = t.rem(&rest)?;
    let mut i = 1;
    while rest.deg_i() >= 2 * i as i64 {
        h = h.pow_mod(&q, &rest)?;
        let g = poly_gcd(&rest, &(&h - &t))?;
        if !g.is_one() {
            rest = rest.exact_div(&g)?;
            h = h.rem(&rest)?;
            out.push((g, i));
        }
        i += 1;
    }
    if !rest.is_constant() {
        let d = rest.degree().unwrap();
        out.push((rest.monic(), d));
    }
    Ok(out)
}

fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>> {
    let n = f.degree().unwrap_or(0);
    if n <= d {
        return Ok(vec![f.monic()]);
    }
    let field = f.field();
    let q = field.cardinality_big().expect("finite field");
    let qd = q.pow(d as u32);
    let char2 = field.characteristic() == 2;
    loop {
        let coeffs: Vec<Elem> = (0..n).map(|_| field.random(rng)).collect();
        let a = Poly::from_coeffs(field, coeffs);
        if a.is_constant() {
            continue;
        }
        let b = if char2 {
            // absolute trace a + a^2 + ... + a^(2^(k d - 1)), q = 2^k
            let k = field.prime_degree() * d;
            let mut acc = a.rem(f)?;
            let mut term = acc.clone();
            for _ in 1..k {
                term = (&term * &term).rem(f)?;
                acc = &acc + &term;
            }
            acc
        } else {
            let e: BigUint = (&qd - 1u32) / 2u32;
            &a.pow_mod(&e, f)? - &Poly::one(field)
        };
        let g = poly_gcd(f, &b)?;
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let mut out = equal_degree(&g, d, rng)?;
            out.extend(equal_degree(&f.exact_div(&g)?, d, rng)?);
            return Ok(out);
        }
    }
}

fn yun_char0(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    let mut out = Vec::new();
    if f.is_constant() {
        return Ok(out);
    }
    let fp = f.derivative();
    let a0 = poly_gcd(f, &fp)?;
    let mut b = f.exact_div(&a0)?;
    let c = fp.exact_div(&a0)?;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = poly_gcd(&b, &d)?;
        b = b.exact_div(&a)?;
        let c = d.exact_div(&a)?;
        d = &c - &b.derivative();
        if !a.is_one() {
            out.push((a.monic(), i));
        }
        i += 1;
    }
    Ok(out)
}

fn factor_rational(f: &Poly) -> Result<Vec<FactorEntry>> {
    let q = Field::Rationals;
    let mut out = Vec::new();
    for (part, mult) in yun_char0(f)? {
        let mut rest = part;
        for r in rational_root_candidates(&rest) {
            let root = Elem::Rat(r);
            if q.is_zero(&rest.eval(&root)) {
                let lin = Poly::from_coeffs(&q, vec![q.neg(&root), q.one()]);
                out.push(FactorEntry { poly: lin.clone(), multiplicity: mult, irreducible: true });
                rest = rest.exact_div(&lin)?;
            }
        }
        if !rest.is_constant() {
            let deg = rest.degree().unwrap();
            // no rational root: degree 2 and 3 are then irreducible
            out.push(FactorEntry { poly: rest.monic(), multiplicity: mult, irreducible: deg <= 3 });
        }
    }
    Ok(out)
}

/// Candidate roots `±a/b` with `a | c0`, `b | cn` after clearing denominators.
/// Gives up (empty list) when the integers are too large to trial-divide.
fn rational_root_candidates(f: &Poly) -> Vec<BigRational> {
    let mut denom_lcm = BigInt::one();
    for c in f.coeffs() {
        if let Elem::Rat(r) = c {
            denom_lcm = denom_lcm.lcm(r.denom());
        }
    }
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| match c {
            Elem::Rat(r) => (r * BigRational::from_integer(denom_lcm.clone())).to_integer(),
            _ => unreachable!(),
        })
        .collect();
    let mut out = Vec::new();
    let shift = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if shift > 0 {
        out.push(BigRational::zero());
    }
    let (Some(a0), Some(an)) = (ints[shift].abs().to_u64(), ints.last().unwrap().abs().to_u64()) else {
        return out;
    };
    const LIMIT: u64 = 1 << 40;
    if a0 > LIMIT || an > LIMIT {
        return out;
    }
    let mut seen = std::collections::BTreeSet::new();
    for a in divisors(a0) {
        for b in divisors(an) {
            for s in [1i64, -1] {
                let r = BigRational::new(BigInt::from(a) * s, BigInt::from(b));
                if seen.insert(r.clone()) {
                    out.push(r);
                }
            }
        }
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}
