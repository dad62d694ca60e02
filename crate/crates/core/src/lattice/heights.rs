//! Local height contributions of fibre components and the torsion-section
//! scans built on them.

use num_integer::Integer;
use num_rational::Ratio;

use super::groups::group_exponent;
use crate::localfibers::{AffineLabel, LocalFiberData};
use crate::{Error, Result};

/// Least `d` killing every fibre component group.
pub fn compute_d(fibers: &[LocalFiberData]) -> u64 {
    compute_d_labels(&fibers.iter().map(|f| f.label()).collect::<Vec<_>>())
}

pub fn compute_d_labels(labels: &[AffineLabel]) -> u64 {
    labels.iter().fold(1, |acc, l| acc.lcm(&group_exponent(&l.disc_group())))
}

fn simple_components(label: AffineLabel) -> u32 {
    label.disc_group().iter().product::<u64>() as u32
}

fn check_index(label: AffineLabel, i: u32) -> Result<()> {
    if i >= simple_components(label) {
        return Err(Error::Domain(format!("{} has no simple component {}", label, i)));
    }
    Ok(())
}

/// Contribution of the simple component `i` (0 is the identity component)
/// to the height of a section meeting it. For `D̃n`, component 1 is the
/// near one and 2, 3 are the far ones.
pub fn local_contribution(label: AffineLabel, i: u32) -> Result<Ratio<i64>> {
    check_index(label, i)?;
    if i == 0 {
        return Ok(Ratio::from_integer(0));
    }
    let i = i as i64;
    Ok(match label {
        AffineLabel::A(n) => {
            let n = n as i64;
            Ratio::new(i * (n + 1 - i), n + 1)
        }
        AffineLabel::A1Star => Ratio::new(1, 2),
        AffineLabel::A2Star => Ratio::new(2, 3),
        AffineLabel::D(n) => {
            if i == 1 {
                Ratio::from_integer(1)
            } else {
                Ratio::new(n as i64, 4)
            }
        }
        AffineLabel::E(6) => Ratio::new(4, 3),
        AffineLabel::E(7) => Ratio::new(3, 2),
        _ => unreachable!("index checked"),
    })
}

/// Order of the simple component `i` in the component group.
pub fn component_order(label: AffineLabel, i: u32) -> Result<u32> {
    check_index(label, i)?;
    if i == 0 {
        return Ok(1);
    }
    Ok(match label {
        AffineLabel::A(n) => (n + 1) / i.gcd(&(n + 1)),
        AffineLabel::A1Star | AffineLabel::E(7) => 2,
        AffineLabel::A2Star | AffineLabel::E(6) => 3,
        AffineLabel::D(n) => {
            if n % 2 == 0 || i == 1 {
                2
            } else {
                4
            }
        }
        _ => unreachable!("index checked"),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TorsionCandidate {
    pub fibers: Vec<AffineLabel>,
    pub order: u32,
}

fn single_fibre_types() -> Vec<AffineLabel> {
    let mut v = vec![AffineLabel::A0Star, AffineLabel::A0StarStar, AffineLabel::A1Star, AffineLabel::A2Star];
    v.extend((1..=8).map(AffineLabel::A));
    v.extend((4..=8).map(AffineLabel::D));
    v.extend((6..=8).map(AffineLabel::E));
    v
}

/// Fibre types that can carry a torsion section disjoint from the zero
/// section. A torsion section has height `2 + 2 (P.O) - Σ contributions = 0`
/// (the constant 2 is `2χ` with `χ = 1`), so with `P.O = 0` the
/// contributions sum to exactly 2.
///
/// With one special fibre every fibre type of rank at most 8 is tried and
/// the order is that of the component met. With two special fibres only
/// additive or smooth fibres are allowed (tame double fibres) and the
/// section must have order 2.
pub fn torsion_fiber_scan(special_fibers: u32) -> Result<Vec<TorsionCandidate>> {
    let two = Ratio::from_integer(2);
    let mut out = std::collections::BTreeSet::new();
    match special_fibers {
        1 => {
            for l in single_fibre_types() {
                for i in 1..simple_components(l) {
                    if local_contribution(l, i)? == two {
                        out.insert(TorsionCandidate { fibers: vec![l], order: component_order(l, i)? });
                    }
                }
            }
        }
        2 => {
            let mut types: Vec<AffineLabel> = single_fibre_types().into_iter().filter(|l| l.is_additive()).collect();
            types.push(AffineLabel::A(0));
            for (ai, &a) in types.iter().enumerate() {
                for &b in &types[ai..] {
                    if a.rank() + b.rank() > 8 {
                        continue;
                    }
                    for i in 0..simple_components(a) {
                        for j in 0..simple_components(b) {
                            if i == 0 && j == 0 {
                                continue;
                            }
                            let ok_order = [(a, i), (b, j)]
                                .iter()
                                .all(|&(l, k)| component_order(l, k).is_ok_and(|o| o <= 2));
                            if ok_order && local_contribution(a, i)? + local_contribution(b, j)? == two {
                                let mut fibers = vec![a, b];
                                fibers.sort_by_key(|l| l.display_key());
                                out.insert(TorsionCandidate { fibers, order: 2 });
                            }
                        }
                    }
                }
            }
        }
        n => return Err(Error::Input(format!("torsion scan takes 1 or 2 special fibres, not {}", n))),
    }
    Ok(out.into_iter().collect())
}
