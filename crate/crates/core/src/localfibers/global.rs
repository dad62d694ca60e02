use crate::exactalg::{factor, poly_key, Place};
use crate::weierstrass::{discriminant, WeierstrassModel};
use crate::{Error, Result};

use super::tate::{tate_at, LocalOutcome};
use super::types::{AffineLabel, LocalFiberData};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnclassifiedPlace {
    pub place: Place,
    pub v_disc: u32,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalReport {
    /// Every zero of the discriminant plus infinity, smooth ones included,
    /// ordered by (degree, π, ∞ last).
    pub fibers: Vec<LocalFiberData>,
    pub unclassified: Vec<UnclassifiedPlace>,
    /// `Σ (e_t + δ_t) deg(t)` over the classified places.
    pub euler_sum: u64,
    /// `Σ (b_t - 1) deg(t)` over the classified places.
    pub rank_sum: u64,
    /// `None` while some place is unclassified.
    pub extremal: Option<bool>,
}

impl GlobalReport {
    pub fn is_conclusive(&self) -> bool {
        self.unclassified.is_empty()
    }

    /// Geometric fibre labels, each place counted `deg` times, smooth
    /// fibres omitted.
    pub fn labels(&self) -> Vec<AffineLabel> {
        let mut out = Vec::new();
        for f in &self.fibers {
            if f.kodaira != super::Kodaira::I0 {
                out.extend(std::iter::repeat(f.label()).take(f.degree()));
            }
        }
        out
    }

    pub fn max_wild(&self) -> u32 {
        self.fibers.iter().map(|f| f.wild).max().unwrap_or(0)
    }
}

/// Classifies every singular fibre. Fails with
/// [`Error::NotRationalElliptic`] when all places are classified and the
/// weighted Euler sum differs from 12.
pub fn classify_all(m: &WeierstrassModel, seed: u64) -> Result<GlobalReport> {
    let disc = discriminant(m);
    if disc.is_zero() {
        // let tate_at report the precise reason
        tate_at(m, &Place::Infinity)?;
        return Err(Error::Domain("discriminant vanishes".into()));
    }
    let fac = factor(&disc, seed)?;
    let mut places: Vec<Place> = fac.factors.iter().map(|e| Place::from_factor(e.poly.clone())).collect();
    places.sort_by(|a, b| match (a, b) {
        (Place::Finite(x), Place::Finite(y)) => poly_key(x).cmp(&poly_key(y)),
        (Place::Finite(_), Place::Infinity) => std::cmp::Ordering::Less,
        (Place::Infinity, Place::Finite(_)) => std::cmp::Ordering::Greater,
        _ => std::cmp::Ordering::Equal,
    });
    places.push(Place::Infinity);

    let mut fibers = Vec::new();
    let mut unclassified = Vec::new();
    for place in places {
        match tate_at(m, &place)? {
            LocalOutcome::Classified(d) => fibers.push(d),
            LocalOutcome::Unclassified { place, v_disc, reason } => {
                unclassified.push(UnclassifiedPlace { place, v_disc, reason })
            }
        }
    }
    let euler_sum: u64 = fibers.iter().map(|f| (f.euler + f.wild) as u64 * f.degree() as u64).sum();
    let rank_sum: u64 = fibers.iter().map(|f| (f.components - 1) as u64 * f.degree() as u64).sum();
    if unclassified.is_empty() && euler_sum != 12 {
        return Err(Error::NotRationalElliptic { sum: euler_sum as i64 });
    }
    let extremal = unclassified.is_empty().then_some(rank_sum == 8);
    Ok(GlobalReport { fibers, unclassified, euler_sum, rank_sum, extremal })
}
