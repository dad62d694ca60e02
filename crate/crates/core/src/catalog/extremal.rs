//! Extremal fibre configurations from the lattice side: rank-8 root
//! configurations inside E8, completed by irreducible fibres to Euler
//! number 12.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::catalog;
use crate::lattice::{find_subsystem, group_order, RootConfiguration};
use crate::localfibers::{canonical_multiset, format_multiset, AffineLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FibrationKind {
    Elliptic,
    QuasiElliptic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalConfig {
    #[serde(serialize_with = "ser_labels", deserialize_with = "de_labels")]
    pub fibers: Vec<AffineLabel>,
    pub kind: FibrationKind,
    /// Total wild conductor contribution `Σ δ_t` (elliptic only).
    pub delta: u32,
}

impl ExtremalConfig {
    pub fn text(&self) -> String {
        format_multiset(&self.fibers)
    }
}

fn ser_labels<S: serde::Serializer>(v: &[AffineLabel], s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_multiset(v))
}

fn de_labels<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<AffineLabel>, D::Error> {
    let s = String::deserialize(d)?;
    crate::localfibers::parse_label_list(&s).map_err(serde::de::Error::custom)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalEnumeration {
    pub p: u64,
    pub configs: Vec<ExtremalConfig>,
    /// Lattice-and-Euler candidates with a large fibre that the table rules
    /// out.
    pub excluded_by_table: Vec<ExtremalConfig>,
    /// Extremal table entries the enumeration did not produce; empty when
    /// the two sides agree.
    pub table_rows_not_found: Vec<String>,
}

/// Reducible fibre types, each listed once.
fn reducible_labels() -> Vec<AffineLabel> {
    let mut v: Vec<AffineLabel> = (1..=8).map(AffineLabel::A).collect();
    v.extend([AffineLabel::A1Star, AffineLabel::A2Star]);
    v.extend((4..=8).map(AffineLabel::D));
    v.extend((6..=8).map(AffineLabel::E));
    v
}

/// Fibres with at least 7 components.
pub fn is_large(l: &AffineLabel) -> bool {
    l.components() >= 7
}

fn multisets(labels: &[AffineLabel], rank: u32, start: usize, cur: &mut Vec<AffineLabel>, out: &mut Vec<Vec<AffineLabel>>) {
    if rank == 0 {
        out.push(cur.clone());
        return;
    }
    for k in start..labels.len() {
        let r = labels[k].rank();
        if r <= rank {
            cur.push(labels[k]);
            multisets(labels, rank - r, k, cur, out);
            cur.pop();
        }
    }
}

fn is_square(n: u64) -> bool {
    let r = (n as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).any(|s| s * s == n)
}

/// Fibre types allowed in a quasi-elliptic fibration.
fn quasi_elliptic_type(l: &AffineLabel, p: u64) -> bool {
    match p {
        2 => matches!(l, AffineLabel::A1Star | AffineLabel::E(7) | AffineLabel::E(8))
            || matches!(l, AffineLabel::D(n) if n % 2 == 0),
        3 => matches!(l, AffineLabel::A2Star | AffineLabel::E(6) | AffineLabel::E(8)),
        _ => false,
    }
}

fn sort_configs(v: &mut [ExtremalConfig]) {
    v.sort_by_key(|c| (c.kind, c.fibers.iter().map(|l| l.display_key()).collect::<Vec<_>>()));
}

/// All extremal configurations in characteristic `p` (0 or a prime).
pub fn enumerate_extremal(p: u64) -> ExtremalEnumeration {
    let wild = p == 2 || p == 3;
    let mut roots = Vec::new();
    multisets(&reducible_labels(), 8, 0, &mut Vec::new(), &mut roots);

    let mut embeds: HashMap<String, bool> = HashMap::new();
    let mut candidates = Vec::new();
    for fibers in roots {
        let cfg = RootConfiguration::from_labels(&fibers);
        let key = cfg.to_string();
        let ok = *embeds.entry(key).or_insert_with(|| {
            let disc = cfg.discriminant_group().map(|d| group_order(&d)).unwrap_or(0);
            is_square(disc) && find_subsystem(&cfg).is_some()
        });
        if !ok {
            continue;
        }
        let euler: u32 = fibers.iter().map(|l| l.euler()).sum();
        let additive = fibers.iter().any(|l| l.is_additive());
        if euler <= 12 {
            let rest = 12 - euler;
            for b in 0..=rest / 2 {
                for a in 0..=rest - 2 * b {
                    let delta = rest - 2 * b - a;
                    if delta > 0 && !(wild && (additive || b > 0)) {
                        continue;
                    }
                    let mut all = fibers.clone();
                    all.extend(std::iter::repeat(AffineLabel::A0Star).take(a as usize));
                    all.extend(std::iter::repeat(AffineLabel::A0StarStar).take(b as usize));
                    candidates.push(ExtremalConfig {
                        fibers: canonical_multiset(&all),
                        kind: FibrationKind::Elliptic,
                        delta,
                    });
                }
            }
        }
        if wild && fibers.iter().all(|l| quasi_elliptic_type(l, p)) {
            candidates.push(ExtremalConfig {
                fibers: canonical_multiset(&fibers),
                kind: FibrationKind::QuasiElliptic,
                delta: 0,
            });
        }
    }

    // large fibres are constrained by the table
    let table: BTreeSet<Vec<AffineLabel>> = catalog()
        .table1
        .iter()
        .flat_map(|row| row.configurations(p))
        .filter(|c| c.iter().map(|l| l.rank()).sum::<u32>() == 8)
        .collect();
    let (mut configs, mut excluded): (Vec<_>, Vec<_>) =
        candidates.into_iter().partition(|c| !c.fibers.iter().any(is_large) || table.contains(&c.fibers));
    let found: BTreeSet<&Vec<AffineLabel>> = configs.iter().map(|c| &c.fibers).collect();
    let table_rows_not_found = table.iter().filter(|t| !found.contains(t)).map(|t| format_multiset(t)).collect();
    sort_configs(&mut configs);
    sort_configs(&mut excluded);
    ExtremalEnumeration { p, configs, excluded_by_table: excluded, table_rows_not_found }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfibers::parse_label_list;

    fn has(e: &ExtremalEnumeration, s: &str, kind: FibrationKind) -> bool {
        let want = canonical_multiset(&parse_label_list(s).unwrap());
        e.configs.iter().any(|c| c.fibers == want && c.kind == kind)
    }

    #[test]
    fn characteristic_zero_examples() {
        let e = enumerate_extremal(0);
        assert!(e.table_rows_not_found.is_empty(), "{:?}", e.table_rows_not_found);
        assert!(has(&e, "E8, A0**", FibrationKind::Elliptic));
        assert!(has(&e, "E8, A0*, A0*", FibrationKind::Elliptic));
        assert!(has(&e, "D4, D4", FibrationKind::Elliptic));
        assert!(has(&e, "A4, A4, A0*, A0*", FibrationKind::Elliptic));
        assert!(!has(&e, "D8, A0**", FibrationKind::Elliptic));
        assert!(e.excluded_by_table.iter().any(|c| c.text() == "D̃8 + Ã0**"));
        assert!(e.configs.iter().all(|c| c.delta == 0 && c.kind == FibrationKind::Elliptic));
        for c in &e.configs {
            let rank: u32 = c.fibers.iter().map(|l| l.rank()).sum();
            let euler: u32 = c.fibers.iter().map(|l| l.euler()).sum();
            assert_eq!((rank, euler), (8, 12), "{}", c.text());
        }
        // no extremal configuration carries an Ã6
        assert!(e.configs.iter().chain(&e.excluded_by_table).all(|c| !c.fibers.contains(&AffineLabel::A(6))));
    }

    #[test]
    fn small_characteristic_examples() {
        let e = enumerate_extremal(2);
        assert!(e.table_rows_not_found.is_empty(), "{:?}", e.table_rows_not_found);
        assert!(has(&e, "E8", FibrationKind::QuasiElliptic));
        assert!(has(&e, "E8", FibrationKind::Elliptic));
        assert!(has(&e, "D4, D4", FibrationKind::QuasiElliptic));
        assert!(has(&e, "E7, A1*", FibrationKind::QuasiElliptic));
        let e = enumerate_extremal(3);
        assert!(e.table_rows_not_found.is_empty(), "{:?}", e.table_rows_not_found);
        assert!(has(&e, "E6, A2*", FibrationKind::QuasiElliptic));
        assert!(has(&e, "A8, A0**", FibrationKind::Elliptic));
        assert!(!has(&e, "D4, D4", FibrationKind::QuasiElliptic));
    }

    #[test]
    fn large_fibres_match_the_table() {
        for p in [0, 2, 3, 5] {
            let e = enumerate_extremal(p);
            let ours: BTreeSet<Vec<AffineLabel>> =
                e.configs.iter().filter(|c| c.fibers.iter().any(is_large)).map(|c| c.fibers.clone()).collect();
            let table: BTreeSet<Vec<AffineLabel>> = catalog()
                .table1
                .iter()
                .flat_map(|r| r.configurations(p))
                .filter(|c| c.iter().map(|l| l.rank()).sum::<u32>() == 8)
                .collect();
            assert_eq!(ours, table, "p = {}", p);
        }
    }

    #[test]
    fn squares() {
        assert!(is_square(0) && is_square(1) && is_square(81) && !is_square(28));
    }
}
