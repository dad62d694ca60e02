//! Weierstrass models `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` with
//! coefficients in `k[t]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactalg::{poly_gcd, Elem, Field, Place, Poly};
use crate::localfibers;
use crate::{Error, Result};

/// Weights of a1, a2, a3, a4, a6.
pub const WEIGHTS: [u32; 5] = [1, 2, 3, 4, 6];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeierstrassModel {
    field: Field,
    a: [Poly; 5],
}

impl WeierstrassModel {
    pub fn new(field: &Field, a: [Poly; 5]) -> Result<WeierstrassModel> {
        for c in &a {
            if c.field() != field {
                return Err(Error::FieldMismatch(c.field().to_string(), field.to_string()));
            }
        }
        Ok(WeierstrassModel { field: field.clone(), a })
    }

    /// Integer coefficient lists for a1, a2, a3, a4, a6, reduced into `field`.
    pub fn from_i64(field: &Field, a: [&[i64]; 5]) -> WeierstrassModel {
        WeierstrassModel { field: field.clone(), a: a.map(|c| Poly::from_i64(field, c)) }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn coeffs(&self) -> &[Poly; 5] {
        &self.a
    }

    pub fn a1(&self) -> &Poly {
        &self.a[0]
    }
    pub fn a2(&self) -> &Poly {
        &self.a[1]
    }
    pub fn a3(&self) -> &Poly {
        &self.a[2]
    }
    pub fn a4(&self) -> &Poly {
        &self.a[3]
    }
    pub fn a6(&self) -> &Poly {
        &self.a[4]
    }

    pub fn change_field(&self, target: &Field) -> Result<WeierstrassModel> {
        let a = [0, 1, 2, 3, 4].map(|i| self.a[i].change_field(target));
        let [a1, a2, a3, a4, a6] = a;
        WeierstrassModel::new(target, [a1?, a2?, a3?, a4?, a6?])
    }

    pub fn display_in(&self, var: &str) -> String {
        let mut lhs = String::from("y^2");
        let mut rhs = String::from("x^3");
        let term = |c: &Poly, mono: &str| -> Option<String> {
            if c.is_zero() {
                return None;
            }
            let s = c.display_in(var);
            Some(if s == "1" {
                mono.to_string()
            } else if c.coeffs().iter().filter(|e| !c.field().is_zero(e)).count() > 1 {
                format!("({}){}", s, mono)
            } else {
                format!("{}{}", s, mono)
            })
        };
        for (c, mono) in [(&self.a[0], "xy"), (&self.a[2], "y")] {
            if let Some(s) = term(c, mono) {
                lhs.push_str(" + ");
                lhs.push_str(&s);
            }
        }
        for (c, mono) in [(&self.a[1], "x^2"), (&self.a[3], "x"), (&self.a[4], "")] {
            if let Some(s) = term(c, mono) {
                rhs.push_str(" + ");
                rhs.push_str(&s);
            }
        }
        format!("{} = {}", lhs, rhs).replace("+ -", "- ")
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.display_in("t"), self.field)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardInvariants {
    pub b2: Poly,
    pub b4: Poly,
    pub b6: Poly,
    pub b8: Poly,
    pub c4: Poly,
    pub c6: Poly,
    pub disc: Poly,
    /// `c4^3 / disc` in lowest terms with monic denominator; `None` when
    /// the discriminant vanishes.
    pub j: Option<(Poly, Poly)>,
}

pub fn compute_invariants(m: &WeierstrassModel) -> StandardInvariants {
    let f = &m.field;
    let k = |n: i64| Poly::constant(f, f.from_i64(n));
    let [a1, a2, a3, a4, a6] = &m.a;
    let b2 = &(a1 * a1) + &(&k(4) * a2);
    let b4 = &(a1 * a3) + &(&k(2) * a4);
    let b6 = &(a3 * a3) + &(&k(4) * a6);
    let b8 = &(&(&(&(a1 * a1) * a6) + &(&(&k(4) * a2) * a6)) - &(&(a1 * a3) * a4))
        + &(&(&(a2 * a3) * a3) - &(a4 * a4));
    let c4 = &(&b2 * &b2) - &(&k(24) * &b4);
    let c6 = &(&(&k(36) * &(&b2 * &b4)) - &(&(&b2 * &b2) * &b2)) - &(&k(216) * &b6);
    let disc = &(&(&(&k(9) * &(&(&b2 * &b4) * &b6)) - &(&(&b2 * &b2) * &b8))
        - &(&k(8) * &(&(&b4 * &b4) * &b4)))
        - &(&k(27) * &(&b6 * &b6));
    let j = if disc.is_zero() {
        None
    } else {
        let num = &(&c4 * &c4) * &c4;
        let g = poly_gcd(&num, &disc).expect("same field");
        let den = disc.exact_div(&g).expect("gcd divides");
        let num = num.exact_div(&g).expect("gcd divides");
        let lc = den.leading().cloned().expect("nonzero");
        let inv = f.inv(&lc).expect("nonzero");
        Some((num.scale(&inv), den.scale(&inv)))
    };
    StandardInvariants { b2, b4, b6, b8, c4, c6, disc, j }
}

pub fn discriminant(m: &WeierstrassModel) -> Poly {
    compute_invariants(m).disc
}

/// The admissible change `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + w` with
/// `u = c t^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admissible {
    pub u: Elem,
    pub u_exp: i32,
    pub r: Poly,
    pub s: Poly,
    pub w: Poly,
}

impl Admissible {
    pub fn identity(field: &Field) -> Admissible {
        Admissible::translation(Poly::zero(field), Poly::zero(field), Poly::zero(field))
    }

    pub fn translation(r: Poly, s: Poly, w: Poly) -> Admissible {
        let f = r.field().clone();
        Admissible { u: f.one(), u_exp: 0, r, s, w }
    }

    pub fn scaling(field: &Field, u: Elem, u_exp: i32) -> Admissible {
        Admissible { u, u_exp, ..Admissible::identity(field) }
    }

    fn field(&self) -> &Field {
        self.r.field()
    }

    /// `p * u^k`, failing if a negative power of t leaves a remainder.
    fn times_u_pow(&self, p: &Poly, k: i32) -> Result<Poly> {
        let f = self.field();
        let scaled = if k >= 0 {
            p.scale(&f.pow(&self.u, k as u64))
        } else {
            p.scale(&f.inv(&f.pow(&self.u, (-k) as u64))?)
        };
        let e = self.u_exp * k;
        if e >= 0 {
            Ok(scaled.mul_t_pow(e as usize))
        } else {
            scaled.div_t_pow((-e) as usize)
        }
    }

    /// The change that applies `self` first and then `h`:
    /// `transform(transform(m, g), h) == transform(m, g.then(h))`.
    pub fn then(&self, h: &Admissible) -> Result<Admissible> {
        let f = self.field();
        let r = &self.r + &self.times_u_pow(&h.r, 2)?;
        let s = &self.s + &self.times_u_pow(&h.s, 1)?;
        let w = &(&self.w + &self.times_u_pow(&h.w, 3)?) + &(&self.s * &self.times_u_pow(&h.r, 2)?);
        Ok(Admissible { u: f.mul(&self.u, &h.u), u_exp: self.u_exp + h.u_exp, r, s, w })
    }
}

/// Applies an admissible change of coordinates. Coefficients are divided by
/// `u^i` exactly; an inexact division or `u = 0` is a domain error.
pub fn transform(m: &WeierstrassModel, g: &Admissible) -> Result<WeierstrassModel> {
    let f = &m.field;
    if f.is_zero(&g.u) {
        return Err(Error::Domain("u must be invertible".into()));
    }
    for p in [&g.r, &g.s, &g.w] {
        if p.field() != f {
            return Err(Error::FieldMismatch(p.field().to_string(), f.to_string()));
        }
    }
    let k = |n: i64| Poly::constant(f, f.from_i64(n));
    let [a1, a2, a3, a4, a6] = &m.a;
    let (r, s, w) = (&g.r, &g.s, &g.w);
    let n1 = a1 + &(&k(2) * s);
    let n2 = &(&(a2 - &(s * a1)) + &(&k(3) * r)) - &(s * s);
    let n3 = &(a3 + &(r * a1)) + &(&k(2) * w);
    let n4 = &(&(&(&(a4 - &(s * a3)) + &(&k(2) * &(r * a2))) - &(&(w + &(r * s)) * a1))
        + &(&k(3) * &(r * r)))
        - &(&k(2) * &(s * w));
    let n6 = &(&(&(&(&(a6 + &(r * a4)) + &(&(r * r) * a2)) + &(&(r * r) * r)) - &(w * a3)) - &(w * w))
        - &(&(r * w) * a1);
    let nums = [n1, n2, n3, n4, n6];
    let mut out = Vec::with_capacity(5);
    for (n, &wt) in nums.iter().zip(WEIGHTS.iter()) {
        out.push(g.times_u_pow(n, -(wt as i32)).map_err(|_| {
            Error::Domain(format!("u^{} does not divide the transformed a{}", wt, wt))
        })?);
    }
    let a: [Poly; 5] = out.try_into().expect("five coefficients");
    Ok(WeierstrassModel { field: f.clone(), a })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenericFiberKind {
    Elliptic,
    QuasiElliptic,
    Invalid,
}

/// `Some(g)` with `g^p = f` when `f` is a p-th power in `k[t]` (`k` perfect).
pub fn pth_root_poly(f: &Poly) -> Result<Option<Poly>> {
    let field = f.field();
    let p = field.characteristic() as usize;
    if p == 0 {
        return Err(Error::Domain("p-th roots need positive characteristic".into()));
    }
    let mut coeffs = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if i % p != 0 {
            if !field.is_zero(c) {
                return Ok(None);
            }
            continue;
        }
        coeffs.push(field.pth_root(c)?);
    }
    Ok(Some(Poly::from_coeffs(field, coeffs)))
}

/// Elliptic iff the discriminant is nonzero. Otherwise, in characteristic 2
/// or 3, quasi-elliptic iff the singular point of the generic fibre is not
/// rational over `k(t)`.
pub fn generic_fiber_kind(m: &WeierstrassModel) -> GenericFiberKind {
    let inv = compute_invariants(m);
    if !inv.disc.is_zero() {
        return GenericFiberKind::Elliptic;
    }
    let rational_cusp = match m.characteristic() {
        3 => {
            // b2 != 0: the double root -b4/b2 is rational.
            // b2 = 0 forces b4 = 0 and the cusp sits at a cube root of b6.
            if !inv.b2.is_zero() || !inv.b4.is_zero() {
                true
            } else {
                pth_root_poly(&inv.b6).expect("char 3").is_some()
            }
        }
        2 => {
            if !m.a1().is_zero() {
                // x0 = a3/a1, y0 = (x0^2 + a4)/a1
                true
            } else {
                match pth_root_poly(m.a4()).expect("char 2") {
                    None => false,
                    Some(x0) => {
                        let y2 = &(&(&(&(&x0 * &x0) * &x0) + &(&(m.a2() * &x0) * &x0)) + &(m.a4() * &x0))
                            + m.a6();
                        pth_root_poly(&y2).expect("char 2").is_some()
                    }
                }
            }
        }
        _ => true,
    };
    if rational_cusp {
        GenericFiberKind::Invalid
    } else {
        GenericFiberKind::QuasiElliptic
    }
}

/// Number of points, including the point at infinity, of a smooth
/// Weierstrass cubic over a finite field.
pub fn count_points(field: &Field, a: &[Elem; 5]) -> Result<u64> {
    let q = field
        .cardinality()
        .ok_or_else(|| Error::Unsupported(format!("point count over {}", field)))?;
    let [a1, a2, a3, a4, a6] = a;
    let mut count = 1u64;
    let char2 = field.characteristic() == 2;
    let half_q = num_bigint::BigUint::from((q - 1) / 2);
    for x in field.elements()? {
        let x2 = field.mul(&x, &x);
        let rhs = field.add(
            &field.add(&field.mul(&x2, &x), &field.mul(a2, &x2)),
            &field.add(&field.mul(a4, &x), a6),
        );
        let b = field.add(&field.mul(a1, &x), a3);
        if char2 {
            if field.is_zero(&b) {
                count += 1;
            } else {
                // y^2 + b y = rhs  <=>  z^2 + z = rhs / b^2
                let c = field.div(&rhs, &field.mul(&b, &b))?;
                let mut tr = c.clone();
                let mut term = c;
                for _ in 1..field.prime_degree() {
                    term = field.mul(&term, &term);
                    tr = field.add(&tr, &term);
                }
                if field.is_zero(&tr) {
                    count += 2;
                }
            }
        } else {
            let d = field.add(&field.mul(&b, &b), &field.mul(&field.from_i64(4), &rhs));
            if field.is_zero(&d) {
                count += 1;
            } else if field.is_one(&field.pow_big(&d, &half_q)) {
                count += 2;
            }
        }
    }
    Ok(count)
}

/// Whether the (smooth) fibre at `place` is a supersingular elliptic curve.
pub fn is_supersingular(m: &WeierstrassModel, place: &Place) -> Result<bool> {
    let red = localfibers::reduction_at(m, place)?;
    if red.v_disc != 0 {
        return Err(Error::Domain(format!("fibre at {} is singular", place)));
    }
    if !red.field.is_finite() {
        return Err(Error::Unsupported(format!("residue field {} is infinite", red.field)));
    }
    let n = count_points(&red.field, &red.a)?;
    let q = red.field.cardinality().expect("finite") as i128;
    let trace = q + 1 - n as i128;
    Ok(trace.rem_euclid(red.field.characteristic() as i128) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn invariants_of_x3_plus_t() {
        let m = WeierstrassModel::from_i64(&q(), [&[], &[], &[], &[], &[0, 1]]);
        let inv = compute_invariants(&m);
        assert!(inv.c4.is_zero());
        assert_eq!(inv.c6, Poly::from_i64(&q(), &[0, -864]));
        assert_eq!(inv.disc, Poly::from_i64(&q(), &[0, 0, -432]));
        assert_eq!(inv.j.unwrap().0, Poly::zero(&q()));
    }

    #[test]
    fn cuspidal_cubic_has_zero_invariants() {
        let m = WeierstrassModel::from_i64(&q(), [&[], &[], &[], &[], &[]]);
        let inv = compute_invariants(&m);
        assert!(inv.disc.is_zero() && inv.c4.is_zero() && inv.j.is_none());
    }

    #[test]
    fn invariants_of_row_with_txy_over_f7() {
        let f7 = Field::prime(7).unwrap();
        let m = WeierstrassModel::from_i64(&f7, [&[0, 1], &[], &[-1], &[], &[]]);
        let inv = compute_invariants(&m);
        assert!(inv.b8.is_zero());
        assert_eq!(inv.disc, Poly::from_i64(&f7, &[-27, 0, 0, -1]));
    }

    #[test]
    fn identity_transform() {
        let m = WeierstrassModel::from_i64(&q(), [&[1], &[0, 2], &[3], &[0, 0, 1], &[5, 1]]);
        assert_eq!(transform(&m, &Admissible::identity(&q())).unwrap(), m);
    }

    #[test]
    fn scaling_by_t_power_clears_t12() {
        // x = t^4 x', y = t^6 y' takes x^3 + t^12 to x^3 + 1
        let m = WeierstrassModel::from_i64(&q(), [&[], &[], &[], &[], &[0; 12].iter().chain(&[1]).copied().collect::<Vec<_>>()]);
        let g = Admissible::scaling(&q(), q().one(), 2);
        let out = transform(&m, &g).unwrap();
        assert_eq!(out, WeierstrassModel::from_i64(&q(), [&[], &[], &[], &[], &[1]]));
        // inexact scaling fails
        assert!(transform(&out, &g).is_err());
    }

    #[test]
    fn discriminant_scales_by_u_minus_12() {
        let m = WeierstrassModel::from_i64(&q(), [&[1, 1], &[2], &[0, 3], &[1, 0, 1], &[7, 0, 0, 1]]);
        let u = rat(3, 2);
        let g = Admissible { u: u.clone(), u_exp: 0, r: Poly::from_i64(&q(), &[1, 2]), s: Poly::from_i64(&q(), &[0, 1]), w: Poly::from_i64(&q(), &[5]) };
        let d0 = discriminant(&m);
        let d1 = discriminant(&transform(&m, &g).unwrap());
        assert_eq!(d1, d0.scale(&q().inv(&q().pow(&u, 12)).unwrap()));
    }

    #[test]
    fn generic_kinds() {
        let m = WeierstrassModel::from_i64(&q(), [&[], &[], &[], &[1], &[0, 1]]);
        assert_eq!(generic_fiber_kind(&m), GenericFiberKind::Elliptic);
        let f3 = Field::prime(3).unwrap();
        let m = WeierstrassModel::from_i64(&f3, [&[], &[], &[], &[], &[0, 1]]);
        assert_eq!(generic_fiber_kind(&m), GenericFiberKind::QuasiElliptic);
        let m = WeierstrassModel::from_i64(&q(), [&[], &[], &[], &[], &[]]);
        assert_eq!(generic_fiber_kind(&m), GenericFiberKind::Invalid);
        // y^2 = x^3 + t^3 in char 3 has the rational cusp (-t, 0)
        let m = WeierstrassModel::from_i64(&f3, [&[], &[], &[], &[], &[0, 0, 0, 1]]);
        assert_eq!(generic_fiber_kind(&m), GenericFiberKind::Invalid);
        let f2 = Field::prime(2).unwrap();
        let m = WeierstrassModel::from_i64(&f2, [&[], &[], &[], &[0, 1], &[]]);
        assert_eq!(generic_fiber_kind(&m), GenericFiberKind::QuasiElliptic);
        let m = WeierstrassModel::from_i64(&f2, [&[0, 1], &[], &[], &[], &[]]);
        assert_eq!(generic_fiber_kind(&m), GenericFiberKind::Invalid);
    }

    fn brute_count(field: &Field, a: &[Elem; 5]) -> u64 {
        let els = field.elements().unwrap();
        let mut n = 1;
        for x in &els {
            for y in &els {
                let lhs = field.add(&field.mul(y, y), &field.mul(y, &field.add(&field.mul(&a[0], x), &a[2])));
                let x2 = field.mul(x, x);
                let rhs = [field.mul(&x2, x), field.mul(&a[1], &x2), field.mul(&a[3], x), a[4].clone()]
                    .iter()
                    .fold(field.zero(), |acc, v| field.add(&acc, v));
                if lhs == rhs {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn point_count_matches_brute_force() {
        for (p, d) in [(2, 1), (2, 3), (3, 2), (5, 1), (7, 1), (13, 1)] {
            let f = Field::gf(p, d).unwrap();
            for a in [[0, 0, 1, 0, 0], [1, 0, 0, 0, 1], [0, 1, 1, 1, 1], [1, 2, 3, 4, 5]] {
                let a = a.map(|c| f.from_i64(c));
                let m = WeierstrassModel::new(&f, a.clone().map(|c| Poly::constant(&f, c))).unwrap();
                if discriminant(&m).is_zero() {
                    continue;
                }
                assert_eq!(count_points(&f, &a).unwrap(), brute_count(&f, &a), "p={} d={} a={:?}", p, d, a);
            }
        }
    }

    #[test]
    fn supersingular_j0_in_char_2() {
        // y^2 + y = x^3 + t: the fibre at t = 0 is y^2 + y = x^3, with 3 points over F_2
        let f2 = Field::prime(2).unwrap();
        let m = WeierstrassModel::from_i64(&f2, [&[], &[], &[1], &[], &[0, 1]]);
        let a = [0, 0, 1, 0, 0].map(|c| f2.from_i64(c));
        assert_eq!(count_points(&f2, &a).unwrap(), 3);
        assert!(is_supersingular(&m, &Place::at(&f2, 0)).unwrap());
    }

    #[test]
    fn ordinary_fibre_over_f5() {
        // y^2 = x^3 + x + t at t = 1: 9 points, trace -3
        let f5 = Field::prime(5).unwrap();
        let m = WeierstrassModel::from_i64(&f5, [&[], &[], &[], &[1], &[0, 1]]);
        assert!(!is_supersingular(&m, &Place::at(&f5, 1)).unwrap());
        let a = [0, 0, 0, 1, 1].map(|c| f5.from_i64(c));
        assert_eq!(count_points(&f5, &a).unwrap(), 9);
    }

    #[test]
    fn smooth_fibre_over_q_is_unsupported() {
        let m = WeierstrassModel::from_i64(&q(), [&[], &[], &[], &[1], &[0, 1]]);
        assert!(matches!(is_supersingular(&m, &Place::at(&q(), 1)), Err(Error::Unsupported(_))));
    }
}
