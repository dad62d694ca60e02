//! Backtracking search for root subsystems of E8.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use super::roots::{e8_inner_table, e8_roots, Root};
use super::{mw_from_embedding, MWData, RootConfiguration};
use crate::Result;

/// Images of the simple roots of a configuration, in the order of
/// `RootConfiguration::gram`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub config: RootConfiguration,
    pub indices: Vec<usize>,
    pub images: Vec<Root>,
}

impl Embedding {
    /// Re-checks the Gram matrix entry by entry.
    pub fn verify(&self) -> bool {
        let g = self.config.gram();
        let t = e8_inner_table();
        self.indices.len() == g.len()
            && (0..g.len()).all(|i| (0..g.len()).all(|j| t[self.indices[i]][self.indices[j]] as i64 == g[i][j]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingSurvey {
    pub first: Option<Embedding>,
    /// Distinct quotient types `E8 / T`, sorted.
    pub quotients: Vec<MWData>,
    pub embeddings_seen: u64,
    pub nodes: u64,
    pub exhaustive: bool,
}

fn neighbours() -> &'static Vec<Vec<usize>> {
    static N: OnceLock<Vec<Vec<usize>>> = OnceLock::new();
    N.get_or_init(|| {
        let t = e8_inner_table();
        t.iter().map(|row| (0..row.len()).filter(|&j| row[j] == 1).collect()).collect()
    })
}

struct Plan {
    /// Search order of the simple roots (indices into the Gram matrix).
    order: Vec<usize>,
    gram: Vec<Vec<i64>>,
    /// For each position, an earlier position adjacent in the diagram.
    anchor: Vec<Option<usize>>,
    /// For each position, an earlier position whose image index must be
    /// smaller (first roots of interchangeable components).
    after: Vec<Option<usize>>,
}

fn plan(cfg: &RootConfiguration) -> Plan {
    let gram = cfg.gram();
    let mut order = Vec::new();
    let mut anchor = Vec::new();
    let mut after = Vec::new();
    let mut off = 0;
    let mut prev_first: Option<(super::RootType, usize, usize)> = None;
    for (ci, comp) in cfg.components().iter().enumerate() {
        let n = comp.rank() as usize;
        let edges = comp.edges();
        let start_pos = order.len();
        let mut seen = vec![false; n];
        let mut queue = std::collections::VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            let pos_of = |x: usize, order: &Vec<usize>| order.iter().position(|&o| o == off + x);
            let parent = edges
                .iter()
                .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
                .find_map(|u| pos_of(u, &order));
            anchor.push(parent);
            order.push(off + v);
            after.push(None);
            for &(a, b) in &edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        if let Some((t, pos, idx)) = prev_first {
            if t == *comp && idx > 0 {
                after[start_pos] = Some(pos);
            }
        }
        prev_first = Some((*comp, start_pos, ci));
        off += n;
    }
    Plan { order, gram, anchor, after }
}

/// Depth-first enumeration. `visit` returns false to stop. Returns
/// `(nodes, completed)`.
fn backtrack(p: &Plan, budget: u64, visit: &mut dyn FnMut(&[usize]) -> bool) -> (u64, bool) {
    let t = e8_inner_table();
    let n = p.order.len();
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let mut nodes = 0u64;
    let all: Vec<usize> = (0..e8_roots().len()).collect();

    fn rec(
        p: &Plan,
        t: &[Vec<i8>],
        all: &[usize],
        chosen: &mut Vec<usize>,
        nodes: &mut u64,
        budget: u64,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Option<bool> {
        let pos = chosen.len();
        if pos == p.order.len() {
            // reorder into Gram order
            let mut idx = vec![0; pos];
            for (k, &o) in p.order.iter().enumerate() {
                idx[o] = chosen[k];
            }
            return Some(visit(&idx));
        }
        *nodes += 1;
        if *nodes > budget {
            return None;
        }
        let candidates: &[usize] = if pos == 0 {
            &all[..1]
        } else if let Some(a) = p.anchor[pos] {
            &neighbours()[chosen[a]]
        } else {
            all
        };
        let me = p.order[pos];
        for &c in candidates {
            if let Some(a) = p.after[pos] {
                if c <= chosen[a] {
                    continue;
                }
            }
            let ok = (0..pos).all(|k| t[c][chosen[k]] as i64 == p.gram[me][p.order[k]]) && !chosen.contains(&c);
            if !ok {
                continue;
            }
            chosen.push(c);
            let r = rec(p, t, all, chosen, nodes, budget, visit);
            chosen.pop();
            match r {
                // the stabiliser of the first root is transitive on both its
                // neighbours and its orthogonal roots, so one choice suffices
                Some(true) if pos == 1 => break,
                Some(true) => {}
                other => return other,
            }
        }
        Some(true)
    }

    let r = rec(p, t, &all, &mut chosen, &mut nodes, budget, visit);
    (nodes, r.is_some())
}

fn make_embedding(cfg: &RootConfiguration, idx: &[usize]) -> Embedding {
    let roots = e8_roots();
    Embedding { config: cfg.clone(), indices: idx.to_vec(), images: idx.iter().map(|&i| roots[i]).collect() }
}

/// Some embedding of the configuration into E8, or `None` with the search
/// exhausted. The first two roots are fixed up to the Weyl group.
pub fn find_subsystem(cfg: &RootConfiguration) -> Option<Embedding> {
    if cfg.rank() > 8 {
        return None;
    }
    if cfg.rank() == 0 {
        return Some(make_embedding(cfg, &[]));
    }
    let p = plan(cfg);
    let mut found = None;
    backtrack(&p, u64::MAX, &mut |idx| {
        found = Some(make_embedding(cfg, idx));
        false
    });
    found
}

/// Enumerates embeddings (up to the node budget) and collects the distinct
/// quotient groups `E8 / T`.
pub fn survey_embeddings(cfg: &RootConfiguration, budget: u64) -> Result<EmbeddingSurvey> {
    if cfg.rank() > 8 {
        return Ok(EmbeddingSurvey { first: None, quotients: vec![], embeddings_seen: 0, nodes: 0, exhaustive: true });
    }
    if cfg.rank() == 0 {
        let e = make_embedding(cfg, &[]);
        let q = mw_from_embedding(&e);
        return Ok(EmbeddingSurvey { first: Some(e), quotients: vec![q], embeddings_seen: 1, nodes: 0, exhaustive: true });
    }
    let p = plan(cfg);
    let mut first = None;
    let mut quotients = BTreeSet::new();
    let mut seen = 0u64;
    let (nodes, completed) = backtrack(&p, budget, &mut |idx| {
        let e = make_embedding(cfg, idx);
        quotients.insert(mw_from_embedding(&e));
        if first.is_none() {
            first = Some(e);
        }
        seen += 1;
        true
    });
    Ok(EmbeddingSurvey {
        first,
        quotients: quotients.into_iter().collect(),
        embeddings_seen: seen,
        nodes,
        exhaustive: completed,
    })
}
