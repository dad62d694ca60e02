//! Sums of monomials such as `a^6 t + b^p` or `2t^2 - 2`, and polynomials in
//! `t, x, y` over a field to evaluate them into.

use std::collections::{BTreeMap, HashMap};

use crate::exactalg::{Elem, Field, Poly};
use crate::{Error, Result};

/// Variables that stay symbolic after evaluation.
pub const POLY_VARS: [char; 3] = ['t', 'x', 'y'];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exponent {
    Int(u32),
    /// A named exponent (`p`, `i`) bound at evaluation time.
    Sym(char),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub factors: Vec<(char, Exponent)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<Term>,
    pub source: String,
}

impl Expr {
    pub fn parse(s: &str) -> Result<Expr> {
        let bad = |why: &str| Error::Input(format!("cannot parse '{}': {}", s, why));
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(bad("empty expression"));
        }
        let mut terms = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let mut sign = 1;
            while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                if chars[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: i64 = if i > start {
                chars[start..i].iter().collect::<String>().parse().map_err(|_| bad("coefficient"))?
            } else {
                1
            };
            let mut factors = Vec::new();
            while i < chars.len() && chars[i] != '+' && chars[i] != '-' {
                if chars[i] == '*' {
                    i += 1;
                    continue;
                }
                let v = chars[i];
                if !v.is_ascii_alphabetic() {
                    return Err(bad(&format!("unexpected '{}'", v)));
                }
                i += 1;
                let mut exp = Exponent::Int(1);
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let s0 = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    exp = if i > s0 {
                        Exponent::Int(chars[s0..i].iter().collect::<String>().parse().map_err(|_| bad("exponent"))?)
                    } else if i < chars.len() && chars[i].is_ascii_alphabetic() {
                        i += 1;
                        Exponent::Sym(chars[i - 1])
                    } else {
                        return Err(bad("missing exponent"));
                    };
                }
                factors.push((v, exp));
            }
            if i == start && factors.is_empty() {
                return Err(bad("dangling sign"));
            }
            terms.push(Term { coeff: sign * coeff, factors });
        }
        Ok(Expr { terms, source: s.to_string() })
    }

    /// Symbols other than `t, x, y` and exponent names.
    pub fn constants(&self) -> Vec<char> {
        let mut out: Vec<char> = self
            .terms
            .iter()
            .flat_map(|t| t.factors.iter().map(|f| f.0))
            .filter(|v| !POLY_VARS.contains(v))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn eval(&self, field: &Field, consts: &HashMap<char, Elem>, exps: &HashMap<char, u32>) -> Result<MPoly> {
        let mut out = MPoly::zero(field);
        for term in &self.terms {
            let mut mono = [0u32; 3];
            let mut c = field.from_i64(term.coeff);
            for (v, e) in &term.factors {
                let e = match e {
                    Exponent::Int(n) => *n,
                    Exponent::Sym(s) => {
                        *exps.get(s).ok_or_else(|| Error::Input(format!("exponent {} is not bound", s)))?
                    }
                };
                if let Some(k) = POLY_VARS.iter().position(|p| p == v) {
                    mono[k] += e;
                } else {
                    let val = consts.get(v).ok_or_else(|| Error::Input(format!("symbol {} is not bound", v)))?;
                    c = field.mul(&c, &field.pow(val, e as u64));
                }
            }
            out.add_term(mono, c);
        }
        Ok(out)
    }
}

/// Sparse polynomial in `t, x, y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    field: Field,
    terms: BTreeMap<[u32; 3], Elem>,
}

impl MPoly {
    pub fn zero(field: &Field) -> MPoly {
        MPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(field: &Field, c: Elem) -> MPoly {
        let mut m = MPoly::zero(field);
        m.add_term([0, 0, 0], c);
        m
    }

    pub fn var(field: &Field, k: usize) -> MPoly {
        let mut mono = [0; 3];
        mono[k] = 1;
        let mut m = MPoly::zero(field);
        m.add_term(mono, field.one());
        m
    }

    pub fn from_t_poly(p: &Poly) -> MPoly {
        let mut m = MPoly::zero(p.field());
        for (i, c) in p.coeffs().iter().enumerate() {
            m.add_term([i as u32, 0, 0], c.clone());
        }
        m
    }

    fn add_term(&mut self, mono: [u32; 3], c: Elem) {
        let f = &self.field;
        let sum = match self.terms.get(&mono) {
            Some(old) => f.add(old, &c),
            None => c,
        };
        if f.is_zero(&sum) {
            self.terms.remove(&mono);
        } else {
            self.terms.insert(mono, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: [u32; 3]) -> Elem {
        self.terms.get(&mono).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn scale(&self, c: &Elem) -> MPoly {
        let mut r = MPoly::zero(&self.field);
        for (m, a) in &self.terms {
            r.add_term(*m, self.field.mul(a, c));
        }
        r
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.scale(&self.field.from_i64(-1)))
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut r = MPoly::zero(&self.field);
        for (m1, a) in &self.terms {
            for (m2, b) in &o.terms {
                r.add_term([m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]], self.field.mul(a, b));
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut r = MPoly::constant(&self.field, self.field.one());
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    /// Substitutes `images[k]` for the k-th variable.
    pub fn substitute(&self, images: &[MPoly; 3]) -> MPoly {
        let mut powers: [Vec<MPoly>; 3] = Default::default();
        let mut r = MPoly::zero(&self.field);
        for (m, c) in &self.terms {
            let mut prod = MPoly::constant(&self.field, c.clone());
            for k in 0..3 {
                let e = m[k] as usize;
                while powers[k].len() <= e {
                    let next = match powers[k].last() {
                        None => MPoly::constant(&self.field, self.field.one()),
                        Some(last) => last.mul(&images[k]),
                    };
                    powers[k].push(next);
                }
                prod = prod.mul(&powers[k][e]);
            }
            r = r.add(&prod);
        }
        r
    }

    /// The polynomial as an element of `k[t]`, if it involves neither x nor y.
    pub fn to_t_poly(&self) -> Option<Poly> {
        let deg = self.terms.keys().map(|m| m[0] as usize).max().unwrap_or(0);
        let mut coeffs = vec![self.field.zero(); deg + 1];
        for (m, c) in &self.terms {
            if m[1] != 0 || m[2] != 0 {
                return None;
            }
            coeffs[m[0] as usize] = c.clone();
        }
        Some(Poly::from_coeffs(&self.field, coeffs))
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut s = String::new();
            let mono: String = POLY_VARS
                .iter()
                .zip(m.iter())
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { v.to_string() } else { format!("{}^{}", v, e) })
                .collect();
            let cs = self.field.format_elem(c);
            if mono.is_empty() {
                s.push_str(&cs);
            } else if self.field.is_one(c) {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", cs, mono));
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> Field {
        Field::prime(7).unwrap()
    }

    #[test]
    fn parses_the_table_shapes() {
        for s in ["a^6 t + b^p", "2t^2 - 2", "-l", "l t", "y + b x + b", "z^2 x", "a^i t", "-t"] {
            Expr::parse(s).unwrap();
        }
        assert!(Expr::parse("").is_err());
        assert!(Expr::parse("t^").is_err());
        assert!(Expr::parse("2 $ t").is_err());
    }

    #[test]
    fn evaluates_with_bindings() {
        let f = f7();
        let e = Expr::parse("2t^2 - l").unwrap();
        let consts = HashMap::from([('l', f.from_i64(3))]);
        let p = e.eval(&f, &consts, &HashMap::new()).unwrap().to_t_poly().unwrap();
        assert_eq!(p, Poly::from_i64(&f, &[-3, 0, 2]));
        let e = Expr::parse("a^p").unwrap();
        let consts = HashMap::from([('a', f.from_i64(2))]);
        let v = e.eval(&f, &consts, &HashMap::from([('p', 3)])).unwrap();
        assert_eq!(v, MPoly::constant(&f, f.from_i64(1)));
        assert!(e.eval(&f, &consts, &HashMap::new()).is_err());
    }

    #[test]
    fn substitution_of_a_square() {
        let f = f7();
        let y2 = MPoly::var(&f, 2).pow(2);
        let img = [MPoly::var(&f, 0), MPoly::var(&f, 1), MPoly::var(&f, 2).add(&MPoly::var(&f, 1))];
        let r = y2.substitute(&img);
        // (y + x)^2 = y^2 + 2xy + x^2
        assert_eq!(r.coeff([0, 1, 1]), f.from_i64(2));
        assert_eq!(r.coeff([0, 2, 0]), f.one());
        assert_eq!(r.coeff([0, 0, 2]), f.one());
    }
}
