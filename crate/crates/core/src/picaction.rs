//! The lattice I^{1,9} in a geometric basis `e0, …, e9`, the canonical
//! class, translations by Mordell–Weil elements, root reflections and
//! Eichler transvections.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::lattice::Root;
use crate::{Error, Result};

pub const DIM: usize = 10;

/// Integer coordinates in the basis `e0, …, e9` with `e0² = 1`,
/// `ei² = -1` and all mixed products zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass(pub [i64; DIM]);

impl DivisorClass {
    pub const ZERO: DivisorClass = DivisorClass([0; DIM]);

    pub fn basis(i: usize) -> DivisorClass {
        let mut c = [0; DIM];
        c[i] = 1;
        DivisorClass(c)
    }

    pub fn from_slice(v: &[i64]) -> Result<DivisorClass> {
        let arr: [i64; DIM] = v
            .try_into()
            .map_err(|_| Error::Input(format!("a divisor class needs {} coordinates, got {}", DIM, v.len())))?;
        Ok(DivisorClass(arr))
    }

    pub fn dot(&self, other: &DivisorClass) -> i64 {
        self.0[0] * other.0[0] - (1..DIM).map(|i| self.0[i] * other.0[i]).sum::<i64>()
    }

    pub fn square(&self) -> i64 {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: DivisorClass) -> DivisorClass {
        DivisorClass(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: DivisorClass) -> DivisorClass {
        DivisorClass(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass(self.0.map(|x| -x))
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, d: DivisorClass) -> DivisorClass {
        DivisorClass(d.0.map(|x| self * x))
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// `K = -3 e0 + e1 + … + e9`.
pub fn canonical_class() -> DivisorClass {
    let mut c = [1; DIM];
    c[0] = -3;
    DivisorClass(c)
}

/// `F0 = -K`, the half-fibre (or fibre when `m = 1`).
pub fn f0() -> DivisorClass {
    -canonical_class()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiberClass {
    pub m: i64,
    pub primitive: DivisorClass,
    pub total: DivisorClass,
}

pub fn fiber_class(m: i64) -> Result<FiberClass> {
    if m < 1 {
        return Err(Error::Domain(format!("multiplicity must be positive, got {}", m)));
    }
    Ok(FiberClass { m, primitive: f0(), total: m * f0() })
}

/// A linear map of I^{1,9}; column `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicIsometry {
    m: [[i64; DIM]; DIM],
}

impl PicIsometry {
    pub fn identity() -> PicIsometry {
        PicIsometry { m: std::array::from_fn(|i| std::array::from_fn(|j| i64::from(i == j))) }
    }

    /// Builds the matrix of a linear map from its values on the basis.
    pub fn from_fn(f: impl Fn(&DivisorClass) -> DivisorClass) -> PicIsometry {
        let mut m = [[0; DIM]; DIM];
        for j in 0..DIM {
            let img = f(&DivisorClass::basis(j));
            for i in 0..DIM {
                m[i][j] = img.0[i];
            }
        }
        PicIsometry { m }
    }

    pub fn matrix(&self) -> &[[i64; DIM]; DIM] {
        &self.m
    }

    pub fn apply(&self, d: &DivisorClass) -> DivisorClass {
        DivisorClass(std::array::from_fn(|i| (0..DIM).map(|j| self.m[i][j] * d.0[j]).sum()))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &PicIsometry) -> PicIsometry {
        PicIsometry {
            m: std::array::from_fn(|i| std::array::from_fn(|j| (0..DIM).map(|k| self.m[i][k] * other.m[k][j]).sum())),
        }
    }

    pub fn pow(&self, n: u32) -> PicIsometry {
        (0..n).fold(PicIsometry::identity(), |acc, _| acc.compose(self))
    }

    /// `M^T G M = G` for the I^{1,9} form.
    pub fn is_isometry(&self) -> bool {
        (0..DIM).all(|i| {
            (0..DIM).all(|j| {
                let ci = self.apply(&DivisorClass::basis(i));
                let cj = self.apply(&DivisorClass::basis(j));
                ci.dot(&cj) == DivisorClass::basis(i).dot(&DivisorClass::basis(j))
            })
        })
    }

    pub fn fixes(&self, d: &DivisorClass) -> bool {
        self.apply(d) == *d
    }
}

fn require_k_perp(v: &DivisorClass) -> Result<()> {
    if v.dot(&canonical_class()) != 0 {
        return Err(Error::Domain(format!("{} is not orthogonal to K", v)));
    }
    Ok(())
}

/// `x ↦ x + <x,F0> v - <x,v> F0 - ½ <v,v> <x,F0> F0`.
pub fn eichler(v: &DivisorClass) -> Result<PicIsometry> {
    require_k_perp(v)?;
    let f = f0();
    let v2 = v.square();
    if v2 % 2 != 0 {
        return Err(Error::Domain(format!("{} has odd square", v)));
    }
    let v = *v;
    Ok(PicIsometry::from_fn(|x| {
        let xf = x.dot(&f);
        *x + xf * v - (x.dot(&v) + v2 / 2 * xf) * f
    }))
}

/// The action of the translation by `A` on a class:
/// `D + m (D.F0) A - (½ m² (D.F0) A² + m A.D) F0`.
pub fn tau(a: &DivisorClass, m: i64, d: &DivisorClass) -> Result<DivisorClass> {
    Ok(tau_matrix(a, m)?.apply(d))
}

/// The same map as a matrix; it coincides with the transvection for `mA`.
pub fn tau_matrix(a: &DivisorClass, m: i64) -> Result<PicIsometry> {
    if m < 1 {
        return Err(Error::Domain(format!("multiplicity must be positive, got {}", m)));
    }
    if a.dot(&f0()) != 0 {
        return Err(Error::Domain(format!("{} is not orthogonal to F0", a)));
    }
    if a.square() % 2 != 0 {
        return Err(Error::Domain(format!("coefficient ½ m² (D.F0) A² is not integral for A = {}", a)));
    }
    eichler(&(m * *a))
}

/// `x ↦ x + <x,α> α` for a root `α`.
pub fn reflection(alpha: &DivisorClass) -> Result<PicIsometry> {
    if alpha.square() != -2 {
        return Err(Error::Domain(format!("{} has square {}, not -2", alpha, alpha.square())));
    }
    let a = *alpha;
    Ok(PicIsometry::from_fn(|x| *x + x.dot(&a) * a))
}

/// `α' = -F0 - α`; the reflections in `α` then `α'`, repeated `m` times,
/// give the translation by `α`.
pub fn reflection_pair_power(alpha: &DivisorClass, m: u32) -> Result<PicIsometry> {
    let s = reflection(alpha)?;
    let s2 = reflection(&(-f0() - *alpha))?;
    Ok(s2.compose(&s).pow(m))
}

/// Nine roots spanning `K^⊥`: `e0-e1-e2-e3` and `e_i - e_{i+1}`.
pub fn k_perp_roots() -> Vec<DivisorClass> {
    let mut out = vec![DivisorClass([1, -1, -1, -1, 0, 0, 0, 0, 0, 0])];
    for i in 1..9 {
        out.push(DivisorClass::basis(i) - DivisorClass::basis(i + 1));
    }
    out
}

/// Whether the map induced on `F0^⊥ / Z F0` is the identity.
pub fn acts_trivially_on_e8_quotient(iso: &PicIsometry) -> Result<bool> {
    if !iso.fixes(&canonical_class()) {
        return Err(Error::Domain("the isometry moves K".into()));
    }
    let f = f0();
    Ok(k_perp_roots().iter().all(|x| {
        let diff = iso.apply(x) - *x;
        // diff = c F0 iff diff is proportional to F0
        let c = diff.0[0] / 3;
        diff == c * f
    }))
}

/// Simple roots of the E8 inside `<K, e9>^⊥`, in the order of
/// `RootType::E(8).gram()`.
pub fn e8_simple_roots() -> [DivisorClass; 8] {
    let e = DivisorClass::basis;
    [
        e(1) - e(2),
        DivisorClass([1, -1, -1, -1, 0, 0, 0, 0, 0, 0]),
        e(2) - e(3),
        e(3) - e(4),
        e(4) - e(5),
        e(5) - e(6),
        e(6) - e(7),
        e(7) - e(8),
    ]
}

/// A root in simple-root coordinates, placed in I^{1,9}.
pub fn e8_root_to_pic(r: &Root) -> DivisorClass {
    e8_simple_roots().iter().zip(r).fold(DivisorClass::ZERO, |acc, (s, &c)| acc + c * *s)
}

/// The basis `(α_1, …, α_8, F0, e9)` adapted to `I^{1,9} = E8 ⊕ <F0, e9>`.
pub fn splitting_basis() -> [DivisorClass; DIM] {
    let s = e8_simple_roots();
    std::array::from_fn(|i| match i {
        0..8 => s[i],
        8 => f0(),
        _ => DivisorClass::basis(9),
    })
}

fn e8_gram_inverse() -> [[i64; 8]; 8] {
    let s = e8_simple_roots();
    let mut a: Vec<Vec<Ratio<i64>>> = (0..8)
        .map(|i| {
            let mut row: Vec<Ratio<i64>> = (0..8).map(|j| Ratio::from_integer(s[i].dot(&s[j]))).collect();
            row.extend((0..8).map(|j| Ratio::from_integer(i64::from(i == j))));
            row
        })
        .collect();
    for c in 0..8 {
        let p = (c..8).find(|&r| a[r][c] != Ratio::from_integer(0)).expect("E8 form is nondegenerate");
        a.swap(c, p);
        let piv = a[c][c];
        for x in a[c].iter_mut() {
            *x /= piv;
        }
        for r in 0..8 {
            if r != c {
                let f = a[r][c];
                let row_c = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(row_c) {
                    *x -= f * y;
                }
            }
        }
    }
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][8 + j].to_integer()))
}

/// Coordinates in `splitting_basis()`.
pub fn splitting_coordinates(x: &DivisorClass) -> [i64; DIM] {
    let f = f0();
    let e9 = DivisorClass::basis(9);
    let b = x.dot(&f);
    let a = x.dot(&e9) + b;
    let y = *x - a * f - b * e9;
    let s = e8_simple_roots();
    let ginv = e8_gram_inverse();
    let pairings: Vec<i64> = s.iter().map(|r| y.dot(r)).collect();
    let mut out = [0; DIM];
    for i in 0..8 {
        out[i] = (0..8).map(|j| ginv[i][j] * pairings[j]).sum();
    }
    out[8] = a;
    out[9] = b;
    out
}

/// Matrix of `iso - 1` in the splitting basis (column `j` is the image of
/// basis vector `j`).
pub fn splitting_matrix_minus_identity(iso: &PicIsometry) -> [[i64; DIM]; DIM] {
    let basis = splitting_basis();
    let mut out = [[0; DIM]; DIM];
    for (j, b) in basis.iter().enumerate() {
        let c = splitting_coordinates(&(iso.apply(b) - *b));
        for i in 0..DIM {
            out[i][j] = c[i];
        }
    }
    out
}

/// Whether `iso - 1`, read in the splitting basis, is divisible by `m`
/// entrywise.
pub fn congruent_mod(iso: &PicIsometry, m: i64) -> bool {
    splitting_matrix_minus_identity(iso).iter().flatten().all(|x| x % m == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::e8_roots;

    fn e(i: usize) -> DivisorClass {
        DivisorClass::basis(i)
    }

    #[test]
    fn fibre_class_products() {
        let fc = fiber_class(2).unwrap();
        assert_eq!(fc.primitive.square(), 0);
        assert_eq!(fc.primitive.dot(&canonical_class()), 0);
        assert_eq!(fc.primitive.dot(&e(9)), 1);
        assert_eq!(fc.total, 2 * f0());
        assert!(fiber_class(0).is_err());
    }

    #[test]
    fn translation_of_e0() {
        let a = e(1) - e(2);
        let img = tau(&a, 1, &e(0)).unwrap();
        assert_eq!(img, DivisorClass([10, 0, -6, -3, -3, -3, -3, -3, -3, -3]));
        assert_eq!(img.square(), 1);
        assert_eq!(img.dot(&canonical_class()), e(0).dot(&canonical_class()));
    }

    #[test]
    fn trivial_translations() {
        assert_eq!(tau(&DivisorClass::ZERO, 3, &e(4)).unwrap(), e(4));
        assert_eq!(tau(&(e(1) - e(2)), 2, &f0()).unwrap(), f0());
        assert!(tau(&e(1), 1, &e(0)).is_err());
    }

    #[test]
    fn reflections() {
        let a = e(1) - e(2);
        let s = reflection(&a).unwrap();
        assert_eq!(s.apply(&a), -a);
        assert_eq!(s.compose(&s), PicIsometry::identity());
        assert!(s.is_isometry());
        assert!(!acts_trivially_on_e8_quotient(&s).unwrap());
        assert!(reflection(&e(1)).is_err());
    }

    #[test]
    fn eichler_restricts_to_a_shift() {
        assert_eq!(eichler(&DivisorClass::ZERO).unwrap(), PicIsometry::identity());
        let v = e(3) - e(7);
        let iota = eichler(&v).unwrap();
        assert!(iota.is_isometry());
        for x in k_perp_roots() {
            let d = iota.apply(&x) - x;
            assert_eq!(d, -(x.dot(&v)) * f0());
        }
        assert!(eichler(&e(0)).is_err());
    }

    #[test]
    fn reflection_pair_matches_translation() {
        let a = e(1) - e(2);
        for m in 1..=3 {
            assert_eq!(reflection_pair_power(&a, m).unwrap(), tau_matrix(&a, m as i64).unwrap());
        }
    }

    #[test]
    fn e8_embedding_in_pic() {
        let s = e8_simple_roots();
        let g = crate::lattice::RootType::E(8).gram();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(s[i].dot(&s[j]), g[i][j]);
            }
            assert_eq!(s[i].dot(&canonical_class()), 0);
            assert_eq!(s[i].dot(&e(9)), 0);
        }
        for r in e8_roots() {
            assert_eq!(e8_root_to_pic(r).square(), -2);
        }
    }

    #[test]
    fn splitting_coordinates_round_trip() {
        let basis = splitting_basis();
        for x in [e(0), e(5), f0(), DivisorClass([4, -1, 2, 0, 3, -5, 1, 1, 0, 7])] {
            let c = splitting_coordinates(&x);
            let back = basis.iter().zip(c).fold(DivisorClass::ZERO, |acc, (b, k)| acc + k * *b);
            assert_eq!(back, x);
        }
    }

    #[test]
    fn congruence_for_translations() {
        let a = e(2) - e(5);
        for m in 1..=3 {
            assert!(congruent_mod(&tau_matrix(&a, m).unwrap(), m));
        }
        assert!(!congruent_mod(&reflection(&a).unwrap(), 2));
    }
}
