use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use super::poly::Poly;
use crate::{Error, Result};

/// Largest field we are willing to enumerate element by element.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// `F_p[g]/(modulus)` for a monic irreducible modulus over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteFieldExt {
    p: u64,
    modulus: Vec<u64>,
}

impl FiniteFieldExt {
    /// Builds the extension defined by `modulus`, which must be an
    /// irreducible polynomial of degree >= 1 over `F_p`.
    pub fn new(modulus: &Poly) -> Result<FiniteFieldExt> {
        let p = match modulus.field() {
            Field::Prime(p) => *p,
            other => {
                return Err(Error::Domain(format!(
                    "extension modulus must live over a prime field, got {}",
                    other
                )))
            }
        };
        let deg = modulus
            .degree()
            .ok_or_else(|| Error::Domain("zero modulus".into()))?;
        if deg == 0 {
            return Err(Error::Domain("constant modulus".into()));
        }
        let monic = modulus.monic();
        if !super::factor::is_irreducible(&monic)? {
            return Err(Error::Domain(format!(
                "modulus {} is reducible over F_{}",
                monic, p
            )));
        }
        let coeffs = monic
            .coeffs()
            .iter()
            .map(|c| match c {
                Elem::Mod(v) => *v,
                _ => unreachable!("prime-field polynomial with foreign coefficient"),
            })
            .collect();
        Ok(FiniteFieldExt {
            p,
            modulus: coeffs,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> Poly {
        let f = Field::Prime(self.p);
        Poly::from_coeffs(&f, self.modulus.iter().map(|&c| Elem::Mod(c)).collect())
    }

    pub fn cardinality(&self) -> Option<u64> {
        self.p.checked_pow(self.degree() as u32)
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let d = self.degree();
        let p = self.p as u128;
        let mut r = vec![0u128; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x as u128 * y as u128) % p;
            }
        }
        for i in (d..r.len()).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            r[i] = 0;
            for j in 0..d {
                let m = self.modulus[j] as u128;
                r[i - d + j] = (r[i - d + j] + (p - c) * m) % p;
            }
        }
        r.truncate(d);
        r.into_iter().map(|x| x as u64).collect()
    }
}

/// A computable field: `Q`, `F_p`, or a finite extension `F_p[g]/(m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
    Ext(Arc<FiniteFieldExt>),
}

/// A field element. Its meaning depends on the [`Field`] it is used with;
/// extension elements are coefficient vectors in the generator `g`, always of
/// full length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Rat(BigRational),
    Mod(u64),
    Ext(Vec<u64>),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{} is not prime", p)));
        }
        Ok(Field::Prime(p))
    }

    /// `Q` for `p = 0`, `F_p` otherwise.
    pub fn from_characteristic(p: u64) -> Result<Field> {
        if p == 0 {
            Ok(Field::Rationals)
        } else {
            Field::prime(p)
        }
    }

    pub fn extension(modulus: &Poly) -> Result<Field> {
        Ok(Field::Ext(Arc::new(FiniteFieldExt::new(modulus)?)))
    }

    /// Some `F_{p^d}`, built from the first monic irreducible of degree `d`
    /// in lexicographic order.
    pub fn gf(p: u64, d: usize) -> Result<Field> {
        let base = Field::prime(p)?;
        if d == 1 {
            return Ok(base);
        }
        let mut digits = vec![0u64; d];
        loop {
            let mut coeffs: Vec<Elem> = digits.iter().map(|&c| Elem::Mod(c)).collect();
            coeffs.push(Elem::Mod(1));
            let m = Poly::from_coeffs(&base, coeffs);
            if digits[0] != 0 && super::factor::is_irreducible(&m)? {
                return Field::extension(&m);
            }
            let mut i = 0;
            loop {
                if i == d {
                    return Err(Error::Domain(format!("no irreducible of degree {} over F_{}", d, p)));
                }
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
            Field::Ext(e) => e.p,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, Field::Rationals)
    }

    /// `None` for `Q` or when `q` overflows a `u64`.
    pub fn cardinality(&self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(*p),
            Field::Ext(e) => e.cardinality(),
        }
    }

    pub fn cardinality_big(&self) -> Option<BigUint> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(BigUint::from(*p)),
            Field::Ext(e) => Some(BigUint::from(e.p).pow(e.degree() as u32)),
        }
    }

    /// Degree over the prime field (1 for `F_p`, 0 for `Q`).
    pub fn prime_degree(&self) -> usize {
        match self {
            Field::Rationals => 0,
            Field::Prime(_) => 1,
            Field::Ext(e) => e.degree(),
        }
    }

    pub fn prime_subfield(&self) -> Field {
        match self {
            Field::Ext(e) => Field::Prime(e.p),
            other => other.clone(),
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Field::Rationals => Elem::Rat(BigRational::zero()),
            Field::Prime(_) => Elem::Mod(0),
            Field::Ext(e) => Elem::Ext(vec![0; e.degree()]),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        match self {
            Field::Rationals => Elem::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Elem::Mod(n.rem_euclid(*p as i64) as u64),
            Field::Ext(e) => {
                let mut v = vec![0; e.degree()];
                v[0] = n.rem_euclid(e.p as i64) as u64;
                Elem::Ext(v)
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match self {
            Field::Rationals => Elem::Rat(BigRational::from_integer(n.clone())),
            _ => {
                let p = BigInt::from(self.characteristic());
                let r = n.mod_floor(&p).to_i64().expect("residue fits");
                self.from_i64(r)
            }
        }
    }

    /// Reduces a rational number; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<Elem> {
        match self {
            Field::Rationals => Ok(Elem::Rat(q.clone())),
            _ => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                self.div(&num, &den).map_err(|_| {
                    Error::Domain(format!(
                        "{} has denominator divisible by the characteristic {}",
                        q,
                        self.characteristic()
                    ))
                })
            }
        }
    }

    /// Embeds an element of the prime subfield (or of the field itself).
    pub fn embed(&self, a: &Elem) -> Result<Elem> {
        match (self, a) {
            (Field::Rationals, Elem::Rat(_)) | (Field::Prime(_), Elem::Mod(_)) => Ok(a.clone()),
            (Field::Ext(e), Elem::Mod(v)) => {
                let mut w = vec![0; e.degree()];
                w[0] = *v % e.p;
                Ok(Elem::Ext(w))
            }
            (Field::Ext(e), Elem::Ext(v)) if v.len() == e.degree() => Ok(a.clone()),
            (Field::Prime(p), Elem::Rat(q)) => Field::Prime(*p).from_rational(q),
            _ => Err(Error::Domain(format!("cannot embed {:?} into {}", a, self))),
        }
    }

    /// The class of the generator `g` of an extension.
    pub fn generator(&self) -> Option<Elem> {
        match self {
            Field::Ext(e) => {
                let mut v = vec![0; e.degree()];
                if e.degree() > 1 {
                    v[1] = 1;
                    Some(Elem::Ext(v))
                } else {
                    // degree-1 "extension": g is the root of g + m0
                    v[0] = (e.p - e.modulus[0]) % e.p;
                    Some(Elem::Ext(v))
                }
            }
            _ => None,
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Rat(q) => q.is_zero(),
            Elem::Mod(v) => *v == 0,
            Elem::Ext(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Field::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Field::Prime(p), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod((x + y) % p),
            (Field::Ext(e), Elem::Ext(x), Elem::Ext(y)) => {
                Elem::Ext(x.iter().zip(y).map(|(u, v)| (u + v) % e.p).collect())
            }
            _ => panic!("element/field mismatch in add: {:?} {:?} over {}", a, b, self),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (Field::Rationals, Elem::Rat(x)) => Elem::Rat(-x),
            (Field::Prime(p), Elem::Mod(x)) => Elem::Mod((p - x % p) % p),
            (Field::Ext(e), Elem::Ext(x)) => {
                Elem::Ext(x.iter().map(|u| (e.p - u % e.p) % e.p).collect())
            }
            _ => panic!("element/field mismatch in neg: {:?} over {}", a, self),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Field::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Field::Prime(p), Elem::Mod(x), Elem::Mod(y)) => {
                Elem::Mod(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (Field::Ext(e), Elem::Ext(x), Elem::Ext(y)) => Elem::Ext(e.mul(x, y)),
            _ => panic!("element/field mismatch in mul: {:?} {:?} over {}", a, b, self),
        }
    }

    pub fn pow(&self, a: &Elem, n: u64) -> Elem {
        self.pow_big(a, &BigUint::from(n))
    }

    pub fn pow_big(&self, a: &Elem, n: &BigUint) -> Elem {
        let mut result = self.one();
        let bits = n.bits();
        for i in (0..bits).rev() {
            result = self.mul(&result, &result);
            if n.bit(i) {
                result = self.mul(&result, a);
            }
        }
        result
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::Domain("division by zero".into()));
        }
        Ok(match (self, a) {
            (Field::Rationals, Elem::Rat(x)) => Elem::Rat(x.recip()),
            (Field::Prime(p), Elem::Mod(x)) => Elem::Mod(inv_mod(*x, *p)),
            (Field::Ext(_), Elem::Ext(_)) => {
                let q = self.cardinality_big().expect("finite");
                self.pow_big(a, &(q - 2u32))
            }
            _ => panic!("element/field mismatch in inv: {:?} over {}", a, self),
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// The unique `p`-th root in a finite field (Frobenius is bijective).
    pub fn pth_root(&self, a: &Elem) -> Result<Elem> {
        match self {
            Field::Rationals => Err(Error::Domain("p-th roots need positive characteristic".into())),
            Field::Prime(_) => Ok(a.clone()),
            Field::Ext(e) => {
                let exp = BigUint::from(e.p).pow(e.degree() as u32 - 1);
                Ok(self.pow_big(a, &exp))
            }
        }
    }

    /// All elements, for fields small enough to enumerate.
    pub fn elements(&self) -> Result<Vec<Elem>> {
        let q = self
            .cardinality()
            .filter(|&q| q <= ENUMERATION_LIMIT)
            .ok_or_else(|| Error::Unsupported(format!("cannot enumerate {}", self)))?;
        Ok(match self {
            Field::Prime(p) => (0..*p).map(Elem::Mod).collect(),
            Field::Ext(e) => {
                let d = e.degree();
                (0..q)
                    .map(|mut n| {
                        let mut v = vec![0; d];
                        for c in v.iter_mut() {
                            *c = n % e.p;
                            n /= e.p;
                        }
                        Elem::Ext(v)
                    })
                    .collect()
            }
            Field::Rationals => unreachable!(),
        })
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match self {
            Field::Rationals => {
                let n: i64 = rng.gen_range(-20..=20);
                let d: i64 = rng.gen_range(1..=5);
                Elem::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
            }
            Field::Prime(p) => Elem::Mod(rng.gen_range(0..*p)),
            Field::Ext(e) => Elem::Ext((0..e.degree()).map(|_| rng.gen_range(0..e.p)).collect()),
        }
    }

    /// Lifts an element of the prime field to a small integer representative
    /// (the least non-negative residue).
    pub fn as_prime_residue(&self, a: &Elem) -> Option<u64> {
        match a {
            Elem::Mod(v) => Some(*v),
            Elem::Ext(v) if v[1..].iter().all(|&c| c == 0) => Some(v[0]),
            _ => None,
        }
    }

    pub fn format_elem(&self, a: &Elem) -> String {
        match a {
            Elem::Rat(q) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Elem::Mod(v) => v.to_string(),
            Elem::Ext(v) => {
                let mut terms = Vec::new();
                for (i, &c) in v.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
                    terms.push(match i {
                        0 => coef,
                        1 => format!("{}g", coef),
                        _ => format!("{}g^{}", coef, i),
                    });
                }
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            }
        }
    }

}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{}", p),
            Field::Ext(e) => write!(f, "F_{}^{}[g]/({})", e.p, e.degree(), e.modulus().display_in("g")),
        }
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i128) as u64
}
