use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use super::field::{Elem, Field};
use crate::{Error, Result};

/// Dense univariate polynomial, coefficients in ascending degree, trimmed so
/// the leading coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::from_coeffs(field, vec![c])
    }

    pub fn monomial(field: &Field, c: Elem, k: usize) -> Poly {
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Poly::from_coeffs(field, coeffs)
    }

    /// The variable `t`.
    pub fn t(field: &Field) -> Poly {
        Poly::monomial(field, field.one(), 1)
    }

    pub fn from_coeffs(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn from_i64(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn check_same_field(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Elem) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    fn add_impl(&self, other: &Poly) -> Poly {
        assert_eq!(self.field, other.field, "polynomial field mismatch");
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect();
        Poly::from_coeffs(f, coeffs)
    }

    fn mul_impl(&self, other: &Poly) -> Poly {
        assert_eq!(self.field, other.field, "polynomial field mismatch");
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut coeffs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, coeffs)
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut result = Poly::one(&self.field);
        for _ in 0..n {
            result = &result * self;
        }
        result
    }

    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.check_same_field(d)?;
        let f = &self.field;
        let dd = d.degree().ok_or_else(|| Error::Domain("polynomial division by zero".into()))?;
        let inv = f.inv(d.leading().unwrap())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(&r[k + dd], &inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] = f.sub(&r[k + j], &f.mul(&c, dj));
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::from_coeffs(f, q), Poly::from_coeffs(f, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.div_rem(d)?.1)
    }

    /// Quotient when `d` divides `self`, a domain error otherwise.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Domain(format!("{} does not divide {}", d, self)));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        if self.is_zero() {
            return Ok(other.is_zero());
        }
        Ok(other.rem(self)?.is_zero())
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// `self(g(t))`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(&self.field, c.clone());
        }
        acc
    }

    /// `self(t + c)`.
    pub fn shift(&self, c: &Elem) -> Poly {
        let lin = Poly::from_coeffs(&self.field, vec![c.clone(), self.field.one()]);
        self.compose(&lin)
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        Poly::from_coeffs(f, coeffs)
    }

    /// Multiplicity of `t` as a factor, `None` for the zero polynomial.
    pub fn t_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.field.is_zero(c))
    }

    pub fn mul_t_pow(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { field: self.field.clone(), coeffs }
    }

    /// Divides by `t^k`; fails unless the division is exact.
    pub fn div_t_pow(&self, k: usize) -> Result<Poly> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.t_valuation().unwrap() < k {
            return Err(Error::Domain(format!("t^{} does not divide {}", k, self)));
        }
        Ok(Poly { field: self.field.clone(), coeffs: self.coeffs[k..].to_vec() })
    }

    /// `t^n self(1/t)` for `n >= deg self`.
    pub fn reverse_to(&self, n: usize) -> Poly {
        let mut coeffs = vec![self.field.zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            assert!(i <= n, "reverse_to below the degree");
            coeffs[n - i] = c.clone();
        }
        Poly::from_coeffs(&self.field, coeffs)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Poly) -> Result<Poly> {
        let base = self.rem(m)?;
        let mut result = Poly::one(&self.field).rem(m)?;
        for i in (0..e.bits()).rev() {
            result = (&result * &result).rem(m)?;
            if e.bit(i) {
                result = (&result * &base).rem(m)?;
            }
        }
        Ok(result)
    }

    /// Coefficients mapped into another field: prime field into one of its
    /// extensions, or rationals reduced modulo p.
    pub fn change_field(&self, target: &Field) -> Result<Poly> {
        let coeffs = self.coeffs.iter().map(|c| target.embed(c)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(target, coeffs))
    }

    /// Roots in the coefficient field. Finite fields use the factorisation,
    /// over `Q` the rational-root test.
    pub fn roots(&self) -> Result<Vec<Elem>> {
        if self.is_zero() {
            return Err(Error::Domain("roots of the zero polynomial".into()));
        }
        let fac = super::factor::factor(self, 0)?;
        let f = &self.field;
        let mut roots: Vec<Elem> = fac
            .factors
            .iter()
            .filter(|e| e.poly.degree() == Some(1))
            .map(|e| f.neg(&e.poly.coeff(0)))
            .collect();
        roots.sort();
        Ok(roots)
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let mut s = f.format_elem(c);
            let negative = s.starts_with('-');
            if negative {
                s.remove(0);
            }
            let compound = s.contains('+') || s.contains('-');
            if compound {
                s = format!("({})", s);
            }
            let body = match i {
                0 => s,
                _ => {
                    let coef = if s == "1" { String::new() } else { s };
                    let mono = if i == 1 { var.to_string() } else { format!("{}^{}", var, i) };
                    format!("{}{}", coef, mono)
                }
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("t"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, other: &Poly) -> Poly {
        self.add_impl(other)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, other: &Poly) -> Poly {
        self.add_impl(&-other)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, other: &Poly) -> Poly {
        self.mul_impl(other)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|c| f.neg(c)).collect())
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn poly_gcd(f: &Poly, g: &Poly) -> Result<Poly> {
    f.check_same_field(g)?;
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.monic())
}
