use crate::exactalg::{factor, residue_field_at, Elem, Field, Place, Poly};
use crate::weierstrass::{compute_invariants, generic_fiber_kind, transform, Admissible, GenericFiberKind, WeierstrassModel, WEIGHTS};
use crate::{Error, Result};

use super::types::{Kodaira, LocalFiberData};

/// Guard against runaway loops; real inputs need a handful of rounds.
const MAX_ROUNDS: usize = 64;

/// Arithmetic at a finite place `π` of `k[t]`.
pub(crate) struct Local {
    pi: Poly,
    pub(crate) k: Field,
}

impl Local {
    pub(crate) fn new(pi: &Poly) -> Result<Local> {
        let k = residue_field_at(&Place::Finite(pi.clone()), pi.field())?;
        Ok(Local { pi: pi.clone(), k })
    }

    pub(crate) fn val(&self, f: &Poly) -> u32 {
        if f.is_zero() {
            return u32::MAX;
        }
        let mut f = f.clone();
        let mut v = 0;
        loop {
            let (q, r) = f.div_rem(&self.pi).expect("nonzero modulus");
            if !r.is_zero() {
                return v;
            }
            f = q;
            v += 1;
        }
    }

    /// `f mod π` in the residue field.
    pub(crate) fn red(&self, f: &Poly) -> Elem {
        let r = f.rem(&self.pi).expect("nonzero modulus");
        match &self.k {
            Field::Ext(e) if self.pi.degree() != Some(1) => {
                let mut v = vec![0u64; e.degree()];
                for (i, c) in r.coeffs().iter().enumerate() {
                    v[i] = match c {
                        Elem::Mod(x) => *x,
                        _ => unreachable!("prime-field coefficient expected"),
                    };
                }
                Elem::Ext(v)
            }
            _ => r.coeff(0),
        }
    }

    /// `(f / π^k) mod π`; the division must be exact.
    pub(crate) fn red_k(&self, f: &Poly, k: u32) -> Result<Elem> {
        Ok(self.red(&f.exact_div(&self.pi.pow(k))?))
    }

    pub(crate) fn lift(&self, e: &Elem) -> Poly {
        let base = self.pi.field();
        match e {
            Elem::Ext(v) if self.pi.degree() != Some(1) => {
                Poly::from_coeffs(base, v.iter().map(|&c| Elem::Mod(c)).collect())
            }
            _ => Poly::constant(base, e.clone()),
        }
    }

    fn pi_pow(&self, k: u32) -> Poly {
        self.pi.pow(k)
    }

    /// Roots of a polynomial over the residue field, with multiplicity.
    fn roots_with_multiplicity(&self, p: &Poly) -> Result<Vec<(Elem, u32)>> {
        let fac = factor(p, 0)?;
        let mut out = Vec::new();
        for e in fac.factors {
            if e.poly.degree() == Some(1) {
                out.push((self.k.neg(&e.poly.coeff(0)), e.multiplicity));
            }
        }
        Ok(out)
    }

    fn sqrt(&self, a: &Elem) -> Result<Elem> {
        self.k.pth_root(a)
    }
}

/// The model in `s = 1/t` together with the place `s = 0`.
pub(crate) fn model_at_infinity(m: &WeierstrassModel) -> WeierstrassModel {
    let f = m.field();
    let k = m
        .coeffs()
        .iter()
        .zip(WEIGHTS)
        .filter_map(|(a, w)| a.degree().map(|d| (d as u32).div_ceil(w)))
        .max()
        .unwrap_or(0);
    let a = [0, 1, 2, 3, 4].map(|i| {
        let c = &m.coeffs()[i];
        if c.is_zero() {
            c.clone()
        } else {
            c.reverse_to((k * WEIGHTS[i]) as usize)
        }
    });
    WeierstrassModel::new(f, a).expect("same field")
}

/// Resolves a place into a model and a finite uniformiser.
pub(crate) fn localize(m: &WeierstrassModel, place: &Place) -> Result<(WeierstrassModel, Poly)> {
    match place {
        Place::Infinity => Ok((model_at_infinity(m), Poly::t(m.field()))),
        Place::Finite(pi) => {
            if pi.field() != m.field() {
                return Err(Error::FieldMismatch(pi.field().to_string(), m.field().to_string()));
            }
            Ok((m.clone(), pi.clone()))
        }
    }
}

pub(crate) struct TateOutcome {
    pub kodaira: Kodaira,
    pub v_disc: u32,
    pub minimal: WeierstrassModel,
    pub reductions: u32,
    pub split: Option<bool>,
}

fn translate(m: &WeierstrassModel, r: Poly, s: Poly, w: Poly) -> Result<WeierstrassModel> {
    transform(m, &Admissible::translation(r, s, w))
}

fn zero(f: &Field) -> Poly {
    Poly::zero(f)
}

/// Tate's algorithm at the finite place `π` for a model integral there.
pub(crate) fn run_tate(model: &WeierstrassModel, loc: &Local) -> Result<TateOutcome> {
    let base = model.field().clone();
    let k = loc.k.clone();
    let char_k = k.characteristic();
    let half = |e: &Elem| k.div(e, &k.from_i64(2));
    let mut m = model.clone();
    let mut reductions = 0;
    let mut minimal = model.clone();
    for _ in 0..MAX_ROUNDS {
        let inv = compute_invariants(&m);
        let vd = loc.val(&inv.disc);
        if vd == u32::MAX {
            return Err(Error::Domain("discriminant vanishes identically".into()));
        }
        let done = |kodaira: Kodaira, split: Option<bool>, minimal: &WeierstrassModel| TateOutcome {
            kodaira,
            v_disc: vd,
            minimal: minimal.clone(),
            reductions,
            split,
        };
        if vd == 0 {
            return Ok(done(Kodaira::I0, None, &minimal));
        }

        // move the singular point of the reduction to (0, 0)
        let [a1, a2, a3, a4, a6] = m.coeffs().clone().map(|c| loc.red(&c));
        let (x0, y0) = if char_k == 2 {
            if !k.is_zero(&a1) {
                let x0 = k.div(&a3, &a1)?;
                let y0 = k.div(&k.add(&k.mul(&x0, &x0), &a4), &a1)?;
                (x0, y0)
            } else {
                let x0 = loc.sqrt(&a4)?;
                let x2 = k.mul(&x0, &x0);
                let rhs = [k.mul(&x2, &x0), k.mul(&a2, &x2), k.mul(&a4, &x0), a6.clone()]
                    .iter()
                    .fold(k.zero(), |acc, v| k.add(&acc, v));
                (x0, loc.sqrt(&rhs)?)
            }
        } else {
            let [b2, b4, b6] = [&inv.b2, &inv.b4, &inv.b6].map(|b| loc.red(b));
            // 4 g(x) = 4x^3 + b2 x^2 + 2 b4 x + b6
            let g = Poly::from_coeffs(&k, vec![b6, k.mul(&k.from_i64(2), &b4), b2, k.from_i64(4)]);
            let x0 = loc
                .roots_with_multiplicity(&g)?
                .into_iter()
                .find(|(_, mult)| *mult >= 2)
                .map(|(r, _)| r)
                .ok_or_else(|| Error::Domain("singular reduction without a multiple root".into()))?;
            let y0 = k.neg(&half(&k.add(&k.mul(&a1, &x0), &a3))?);
            (x0, y0)
        };
        m = translate(&m, loc.lift(&x0), zero(&base), loc.lift(&y0))?;
        let inv = compute_invariants(&m);

        if loc.val(&inv.b2) == 0 {
            // tangent cone T^2 + a1 T - a2 at the node
            let (a1, a2) = (loc.red(m.a1()), loc.red(m.a2()));
            let tangent = Poly::from_coeffs(&k, vec![k.neg(&a2), a1, k.one()]);
            let split = !loc.roots_with_multiplicity(&tangent)?.is_empty();
            return Ok(done(Kodaira::I(vd), Some(split), &minimal));
        }
        if loc.val(m.a6()) < 2 {
            return Ok(done(Kodaira::II, None, &minimal));
        }
        if loc.val(&inv.b8) < 3 {
            return Ok(done(Kodaira::III, None, &minimal));
        }
        if loc.val(&inv.b6) < 3 {
            return Ok(done(Kodaira::IV, None, &minimal));
        }

        // make π | a1, a2 and π^2 | a3, a4 and π^3 | a6
        let s = if char_k == 2 {
            loc.sqrt(&loc.red(m.a2()))?
        } else {
            k.neg(&half(&loc.red(m.a1()))?)
        };
        m = translate(&m, zero(&base), loc.lift(&s), zero(&base))?;
        let w = if char_k == 2 {
            loc.sqrt(&loc.red_k(m.a6(), 2)?)?
        } else {
            k.neg(&half(&loc.red_k(m.a3(), 1)?)?)
        };
        m = translate(&m, zero(&base), zero(&base), &loc.lift(&w) * &loc.pi)?;

        let cubic = Poly::from_coeffs(
            &k,
            vec![loc.red_k(m.a6(), 3)?, loc.red_k(m.a4(), 2)?, loc.red_k(m.a2(), 1)?, k.one()],
        );
        let roots = loc.roots_with_multiplicity(&cubic)?;
        let max_mult = roots.iter().map(|(_, m)| *m).max().unwrap_or(1);
        if max_mult == 1 {
            return Ok(done(Kodaira::IStar(0), None, &minimal));
        }
        let alpha = roots.iter().find(|(_, mm)| *mm == max_mult).unwrap().0.clone();
        m = translate(&m, &loc.lift(&alpha) * &loc.pi, zero(&base), zero(&base))?;

        if max_mult == 2 {
            let n = in_star_length(&mut m, loc)?;
            return Ok(done(Kodaira::IStar(n), None, &minimal));
        }

        // triple root, now at 0: Y^2 + a3,2 Y - a6,4
        let a32 = loc.red_k(m.a3(), 2)?;
        let a64 = loc.red_k(m.a6(), 4)?;
        let d = k.add(&k.mul(&a32, &a32), &k.mul(&k.from_i64(4), &a64));
        if !k.is_zero(&d) {
            return Ok(done(Kodaira::IVStar, None, &minimal));
        }
        let y = if char_k == 2 { loc.sqrt(&a64)? } else { k.neg(&half(&a32)?) };
        m = translate(&m, zero(&base), zero(&base), &loc.lift(&y) * &loc.pi_pow(2))?;
        if loc.val(m.a4()) < 4 {
            return Ok(done(Kodaira::IIIStar, None, &minimal));
        }
        if loc.val(m.a6()) < 6 {
            return Ok(done(Kodaira::IIStar, None, &minimal));
        }

        // not minimal: divide a_i by π^i and start over
        let a = [0, 1, 2, 3, 4].map(|i| m.coeffs()[i].exact_div(&loc.pi_pow(WEIGHTS[i])));
        let [b1, b2, b3, b4, b6] = a;
        m = WeierstrassModel::new(&base, [b1?, b2?, b3?, b4?, b6?])?;
        minimal = m.clone();
        reductions += 1;
    }
    Err(Error::Domain("Tate's algorithm did not terminate".into()))
}

/// The `I_n^*` subprocedure. On entry the double root of the cubic sits at 0.
fn in_star_length(m: &mut WeierstrassModel, loc: &Local) -> Result<u32> {
    let k = &loc.k;
    let base = m.field().clone();
    let char2 = k.characteristic() == 2;
    let (mut ex, mut ey) = (2u32, 2u32);
    let mut n = 1;
    for _ in 0..MAX_ROUNDS {
        let a3t = loc.red_k(m.a3(), ey)?;
        let a6t = loc.red_k(m.a6(), ex + ey)?;
        let dy = k.add(&k.mul(&a3t, &a3t), &k.mul(&k.from_i64(4), &a6t));
        if !k.is_zero(&dy) {
            return Ok(n);
        }
        let y = if char2 { k.pth_root(&a6t)? } else { k.neg(&k.div(&a3t, &k.from_i64(2))?) };
        *m = translate(m, Poly::zero(&base), Poly::zero(&base), &loc.lift(&y) * &loc.pi_pow(ey))?;
        ey += 1;
        n += 1;

        let a2t = loc.red_k(m.a2(), 1)?;
        let a4t = loc.red_k(m.a4(), ex + 1)?;
        let a6t = loc.red_k(m.a6(), ex + ey)?;
        let dx = k.sub(&k.mul(&a4t, &a4t), &k.mul(&k.from_i64(4), &k.mul(&a2t, &a6t)));
        if !k.is_zero(&dx) {
            return Ok(n);
        }
        let x = if char2 {
            k.pth_root(&k.div(&a6t, &a2t)?)?
        } else {
            k.neg(&k.div(&a4t, &k.mul(&k.from_i64(2), &a2t))?)
        };
        *m = translate(m, &loc.lift(&x) * &loc.pi_pow(ex), Poly::zero(&base), Poly::zero(&base))?;
        ex += 1;
        n += 1;
    }
    Err(Error::Domain("I_n* loop did not terminate".into()))
}

fn require_elliptic(m: &WeierstrassModel) -> Result<()> {
    match generic_fiber_kind(m) {
        GenericFiberKind::Elliptic => Ok(()),
        GenericFiberKind::QuasiElliptic => {
            Err(Error::Unsupported("quasi-elliptic models are not classified from equations".into()))
        }
        GenericFiberKind::Invalid => Err(Error::Domain("generic fibre is not integral of genus one".into())),
    }
}

/// A model that is minimal at `place`. At infinity the result is written in
/// `s = 1/t`. Returns the input unchanged if it is already minimal.
pub fn minimalize_at(m: &WeierstrassModel, place: &Place) -> Result<WeierstrassModel> {
    require_elliptic(m)?;
    let (local_model, pi) = localize(m, place)?;
    let loc = Local::new(&pi)?;
    Ok(run_tate(&local_model, &loc)?.minimal)
}

/// Either a classification or an explicit refusal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalOutcome {
    Classified(LocalFiberData),
    Unclassified { place: Place, v_disc: u32, reason: String },
}

/// Tate's algorithm at one place. Places whose residue field is out of
/// reach (degree > 1 over `Q`) are still classified when the reduction is
/// visibly multiplicative (`π ∤ c4`); otherwise they come back unclassified.
pub fn tate_at(m: &WeierstrassModel, place: &Place) -> Result<LocalOutcome> {
    require_elliptic(m)?;
    let (local_model, pi) = localize(m, place)?;
    match Local::new(&pi) {
        Ok(loc) => {
            let out = run_tate(&local_model, &loc)?;
            let mut data = LocalFiberData::from_kodaira(place.clone(), out.kodaira, out.v_disc)?;
            data.split = out.split;
            data.reductions = out.reductions;
            Ok(LocalOutcome::Classified(data))
        }
        Err(Error::Unsupported(reason)) => {
            let inv = compute_invariants(&local_model);
            let v_disc = valuation_by(&inv.disc, &pi);
            let v_c4 = valuation_by(&inv.c4, &pi);
            if v_disc == 0 {
                Ok(LocalOutcome::Classified(LocalFiberData::from_kodaira(place.clone(), Kodaira::I0, 0)?))
            } else if v_c4 == 0 {
                Ok(LocalOutcome::Classified(LocalFiberData::from_kodaira(
                    place.clone(),
                    Kodaira::I(v_disc),
                    v_disc,
                )?))
            } else {
                Ok(LocalOutcome::Unclassified { place: place.clone(), v_disc, reason })
            }
        }
        Err(e) => Err(e),
    }
}

pub(crate) fn valuation_by(f: &Poly, pi: &Poly) -> u32 {
    if f.is_zero() {
        return u32::MAX;
    }
    let mut f = f.clone();
    let mut v = 0;
    while let Ok((q, r)) = f.div_rem(pi) {
        if !r.is_zero() {
            break;
        }
        f = q;
        v += 1;
    }
    v
}

/// Reduction of a minimal model at a place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub field: Field,
    pub a: [Elem; 5],
    pub v_disc: u32,
}

pub fn reduction_at(m: &WeierstrassModel, place: &Place) -> Result<Reduction> {
    require_elliptic(m)?;
    let (local_model, pi) = localize(m, place)?;
    let loc = Local::new(&pi)?;
    let out = run_tate(&local_model, &loc)?;
    let a = out.minimal.coeffs().clone().map(|c| loc.red(&c));
    Ok(Reduction { field: loc.k.clone(), a, v_disc: out.v_disc })
}
