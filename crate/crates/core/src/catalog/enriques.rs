//! Configurations of (-2)-curves on Enriques surfaces, as intersection
//! graphs, and the affine Dynkin subdiagrams they contain.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::groups::GroupDesc;
use crate::localfibers::{canonical_multiset, format_multiset, parse_label_list, AffineLabel};
use crate::{Error, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub(super) struct RawSegment {
    from: (i64, i64),
    to: (i64, i64),
    weight: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub(super) struct RawConfig {
    label: String,
    vertices: Vec<(i64, i64)>,
    segments: Vec<RawSegment>,
    double_fibers: String,
    aut_nt: String,
    aut_ct: String,
    moduli: u32,
    named_fibrations: Vec<String>,
    all_curves: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnriquesConfig {
    pub label: String,
    /// Curves, by their position in the drawing.
    pub vertices: Vec<(i64, i64)>,
    /// `(i, j, intersection number)` with `i < j`.
    pub edges: Vec<(usize, usize, u32)>,
    /// Positions listed more than once in the data.
    pub duplicate_vertices: Vec<(i64, i64)>,
    pub double_fibers: Vec<AffineLabel>,
    pub aut_nt: GroupDesc,
    pub aut_ct: GroupDesc,
    pub moduli: u32,
    /// Fibre types of the fibrations named for this configuration.
    pub named_fibrations: Vec<Vec<AffineLabel>>,
    /// Whether the graph is claimed to show every (-2)-curve.
    pub all_curves: bool,
}

fn on_segment(p: (i64, i64), a: (i64, i64), b: (i64, i64)) -> bool {
    let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
    cross == 0 && p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}

impl EnriquesConfig {
    pub(super) fn from_raw(r: &RawConfig) -> Result<EnriquesConfig> {
        let mut vertices: Vec<(i64, i64)> = Vec::new();
        let mut duplicate_vertices = Vec::new();
        for v in &r.vertices {
            if vertices.contains(v) {
                duplicate_vertices.push(*v);
            } else {
                vertices.push(*v);
            }
        }
        // consecutive curves along a drawn segment meet
        let mut edges: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for s in &r.segments {
            let mut on: Vec<usize> = (0..vertices.len()).filter(|&k| on_segment(vertices[k], s.from, s.to)).collect();
            if on.len() < 2 {
                return Err(Error::Input(format!("segment {:?}-{:?} meets fewer than two curves", s.from, s.to)));
            }
            let d = |k: &usize| (vertices[*k].0 - s.from.0).abs() + (vertices[*k].1 - s.from.1).abs();
            on.sort_by_key(d);
            for w in on.windows(2) {
                let key = (w[0].min(w[1]), w[0].max(w[1]));
                if edges.insert(key, s.weight).is_some() {
                    return Err(Error::Input(format!("curves {:?} and {:?} joined twice", vertices[w[0]], vertices[w[1]])));
                }
            }
        }
        let named_fibrations = r
            .named_fibrations
            .iter()
            .map(|s| Ok(canonical_multiset(&parse_label_list(&s.replace('+', ","))?)))
            .collect::<Result<_>>()?;
        Ok(EnriquesConfig {
            label: r.label.clone(),
            vertices,
            edges: edges.into_iter().map(|((a, b), w)| (a, b, w)).collect(),
            duplicate_vertices,
            double_fibers: parse_label_list(&r.double_fibers)?,
            aut_nt: r.aut_nt.parse()?,
            aut_ct: r.aut_ct.parse()?,
            moduli: r.moduli,
            named_fibrations,
            all_curves: r.all_curves,
        })
    }

    /// A bare graph on `n` curves, for experiments.
    pub fn from_graph(label: &str, n: usize, edges: &[(usize, usize, u32)]) -> Result<EnriquesConfig> {
        if let Some(e) = edges.iter().find(|e| e.0 >= n || e.1 >= n || e.0 == e.1 || e.2 == 0) {
            return Err(Error::Input(format!("bad edge {:?} on {} vertices", e, n)));
        }
        Ok(EnriquesConfig {
            label: label.to_string(),
            vertices: (0..n as i64).map(|k| (10 * k, 0)).collect(),
            edges: edges.iter().map(|&(a, b, w)| (a.min(b), a.max(b), w)).collect(),
            duplicate_vertices: Vec::new(),
            double_fibers: Vec::new(),
            aut_nt: GroupDesc::Trivial,
            aut_ct: GroupDesc::Trivial,
            moduli: 0,
            named_fibrations: Vec::new(),
            all_curves: false,
        })
    }

    fn weight(&self, a: usize, b: usize) -> u32 {
        let (a, b) = (a.min(b), a.max(b));
        self.edges.iter().find(|e| e.0 == a && e.1 == b).map(|e| e.2).unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineSubdiagram {
    #[serde(rename = "type")]
    pub label: AffineLabel,
    /// Positions of the curves.
    pub vertices: Vec<(i64, i64)>,
    /// Indices of the curves in the configuration.
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationCandidate {
    pub types: String,
    /// Indices into the subdiagram list.
    pub fibers: Vec<usize>,
    pub named: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnriquesScan {
    pub config: String,
    pub curves: usize,
    pub subdiagrams: Vec<AffineSubdiagram>,
    /// Subdiagrams grouped by fibration: disjoint, non-adjacent diagrams are
    /// fibres of one fibration.
    pub fibrations: Vec<FibrationCandidate>,
    /// Named fibrations and whether the scan found them.
    pub named: Vec<(String, bool)>,
}

impl EnriquesScan {
    pub fn all_named_found(&self) -> bool {
        self.named.iter().all(|(_, ok)| *ok)
    }

    /// Fibrations with a fibre of at least five curves that are not named.
    pub fn unnamed_large(&self) -> Vec<&FibrationCandidate> {
        self.fibrations
            .iter()
            .filter(|f| !f.named && f.fibers.iter().any(|&k| self.subdiagrams[k].members.len() >= 5))
            .collect()
    }
}

/// The affine type of a connected induced subgraph, if any.
fn classify(cfg: &EnriquesConfig, set: &[usize]) -> Option<AffineLabel> {
    let n = set.len();
    let mut edges = Vec::new();
    for (i, &a) in set.iter().enumerate() {
        for (j, &b) in set.iter().enumerate().skip(i + 1) {
            let w = cfg.weight(a, b);
            if w > 0 {
                edges.push((i, j, w));
            }
        }
    }
    if n == 2 {
        return (edges.len() == 1 && edges[0].2 == 2).then_some(AffineLabel::A(1));
    }
    if edges.iter().any(|e| e.2 != 1) {
        return None;
    }
    let mut nbrs = vec![Vec::new(); n];
    for &(a, b, _) in &edges {
        nbrs[a].push(b);
        nbrs[b].push(a);
    }
    let deg: Vec<usize> = nbrs.iter().map(|v| v.len()).collect();
    if edges.len() == n {
        return deg.iter().all(|&d| d == 2).then_some(AffineLabel::A(n as u32 - 1));
    }
    if edges.len() != n - 1 {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&k| deg[k] >= 3).collect();
    if deg.iter().any(|&d| d > 4) {
        return None;
    }
    if branch.len() == 1 && deg[branch[0]] == 4 {
        return (n == 5).then_some(AffineLabel::D(4));
    }
    let leaves = |v: usize| nbrs[v].iter().filter(|&&u| deg[u] == 1).count();
    if branch.len() == 2 && branch.iter().all(|&v| deg[v] == 3 && leaves(v) >= 2) {
        return Some(AffineLabel::D(n as u32 - 1));
    }
    if branch.len() == 1 && deg[branch[0]] == 3 {
        let c = branch[0];
        let mut arms: Vec<usize> = nbrs[c]
            .iter()
            .map(|&start| {
                let (mut prev, mut cur, mut len) = (c, start, 1);
                while deg[cur] == 2 {
                    let next = nbrs[cur].iter().copied().find(|&u| u != prev).expect("path continues");
                    prev = cur;
                    cur = next;
                    len += 1;
                }
                len
            })
            .collect();
        arms.sort();
        return match arms.as_slice() {
            [2, 2, 2] => Some(AffineLabel::E(6)),
            [1, 3, 3] => Some(AffineLabel::E(7)),
            [1, 2, 5] => Some(AffineLabel::E(8)),
            _ => None,
        };
    }
    None
}

fn connected(cfg: &EnriquesConfig, set: &[usize]) -> bool {
    let mut seen = vec![false; set.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for (j, &b) in set.iter().enumerate() {
            if !seen[j] && cfg.weight(set[i], b) > 0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Every connected induced subgraph that is an affine Dynkin diagram, with
/// the fibrations they group into.
pub fn enriques_subdiagram_scan(cfg: &EnriquesConfig) -> EnriquesScan {
    let n = cfg.vertices.len();
    assert!(n < 24, "subset scan is exponential in the number of curves");
    let mut subdiagrams = Vec::new();
    for mask in 1u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 1).collect();
        if set.len() < 2 || !connected(cfg, &set) {
            continue;
        }
        if let Some(label) = classify(cfg, &set) {
            subdiagrams.push(AffineSubdiagram {
                label,
                vertices: set.iter().map(|&k| cfg.vertices[k]).collect(),
                members: set,
            });
        }
    }
    subdiagrams.sort_by(|a, b| a.label.display_key().cmp(&b.label.display_key()).then(a.members.cmp(&b.members)));

    // orthogonal fibres of a genus-one pencil belong to the same fibration
    let orthogonal = |a: &AffineSubdiagram, b: &AffineSubdiagram| {
        a.members.iter().all(|&u| b.members.iter().all(|&v| u != v && cfg.weight(u, v) == 0))
    };
    let m = subdiagrams.len();
    let mut class: Vec<usize> = (0..m).collect();
    for i in 0..m {
        for j in i + 1..m {
            if orthogonal(&subdiagrams[i], &subdiagrams[j]) {
                let (ci, cj) = (class[i], class[j]);
                for c in class.iter_mut() {
                    if *c == cj {
                        *c = ci;
                    }
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, c) in class.iter().enumerate() {
        groups.entry(*c).or_default().push(k);
    }
    let fibrations: Vec<FibrationCandidate> = groups
        .into_values()
        .map(|fibers| {
            let types = canonical_multiset(&fibers.iter().map(|&k| subdiagrams[k].label).collect::<Vec<_>>());
            FibrationCandidate { types: format_multiset(&types), named: cfg.named_fibrations.contains(&types), fibers }
        })
        .collect();
    let named = cfg
        .named_fibrations
        .iter()
        .map(|t| {
            let s = format_multiset(t);
            let found = fibrations.iter().any(|f| f.types == s);
            (s, found)
        })
        .collect();
    EnriquesScan { config: cfg.label.clone(), curves: n, subdiagrams, fibrations, named }
}
