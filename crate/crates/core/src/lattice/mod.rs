//! Root lattices, the E8 root system, discriminant groups, embeddings into
//! E8, Mordell-Weil groups of fibre configurations and height contributions.
//!
//! Forms are negative definite throughout: roots have square `-2` and the
//! Gram matrix of a root lattice is the negated Cartan matrix.

mod embed;
mod groups;
mod heights;
mod roots;
pub mod snf;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use crate::{Error, Result};

pub use embed::{find_subsystem, survey_embeddings, Embedding, EmbeddingSurvey};
pub use groups::{group_embeds, group_exponent, group_order, primary_parts};
pub use heights::{component_order, compute_d, compute_d_labels, local_contribution, torsion_fiber_scan, TorsionCandidate};
pub use roots::{e8_gram, e8_inner, e8_inner_table, e8_roots, Root};

/// Finite-type simply-laced root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootType {
    A(u32),
    D(u32),
    E(u32),
}

impl RootType {
    pub fn checked(self) -> Result<RootType> {
        match self {
            RootType::A(n) if n >= 1 => Ok(self),
            RootType::D(n) if n >= 4 => Ok(self),
            RootType::E(n) if (6..=8).contains(&n) => Ok(self),
            _ => Err(Error::Domain(format!("no root system {}", self))),
        }
    }

    pub fn rank(&self) -> u32 {
        match self {
            RootType::A(n) | RootType::D(n) | RootType::E(n) => *n,
        }
    }

    /// Edges of the Dynkin diagram (0-based, Bourbaki numbering).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        match *self {
            RootType::A(n) => (1..n as usize).map(|i| (i - 1, i)).collect(),
            RootType::D(n) => {
                let n = n as usize;
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 1));
                e
            }
            RootType::E(n) => {
                let mut e = vec![(0, 2), (1, 3), (2, 3)];
                e.extend((3..n as usize - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.rank() as usize;
        let mut c = vec![vec![0; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in self.edges() {
            c[i][j] = -1;
            c[j][i] = -1;
        }
        c
    }

    pub fn gram(&self) -> Vec<Vec<i64>> {
        self.cartan().into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect()
    }

    /// Closed-form discriminant group.
    pub fn disc_group(&self) -> Vec<u64> {
        match *self {
            RootType::A(n) => vec![n as u64 + 1],
            RootType::D(n) if n % 2 == 0 => vec![2, 2],
            RootType::D(_) => vec![4],
            RootType::E(6) => vec![3],
            RootType::E(7) => vec![2],
            RootType::E(_) => vec![],
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootType::A(n) => write!(f, "A{}", n),
            RootType::D(n) => write!(f, "D{}", n),
            RootType::E(n) => write!(f, "E{}", n),
        }
    }
}

impl FromStr for RootType {
    type Err = Error;
    fn from_str(s: &str) -> Result<RootType> {
        let s = s.trim();
        let bad = || Error::Input(format!("unknown root system '{}'", s));
        let (head, num) = s.split_at(1.min(s.len()));
        let n: u32 = num.parse().map_err(|_| bad())?;
        let t = match head {
            "A" => RootType::A(n),
            "D" => RootType::D(n),
            "E" => RootType::E(n),
            _ => return Err(bad()),
        };
        t.checked().map_err(|_| bad())
    }
}

/// Orthogonal sum of root lattices, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootConfiguration {
    components: Vec<RootType>,
}

impl RootConfiguration {
    pub fn new(mut components: Vec<RootType>) -> Result<RootConfiguration> {
        for c in &components {
            c.checked()?;
        }
        components.sort_by_key(|c| (std::cmp::Reverse(c.rank()), *c));
        Ok(RootConfiguration { components })
    }

    /// The root lattice of the non-identity components of the given fibres.
    pub fn from_labels(labels: &[crate::localfibers::AffineLabel]) -> RootConfiguration {
        RootConfiguration::new(labels.iter().filter_map(|l| l.root_type()).collect())
            .expect("fibre root types are valid")
    }

    pub fn components(&self) -> &[RootType] {
        &self.components
    }

    pub fn rank(&self) -> u32 {
        self.components.iter().map(|c| c.rank()).sum()
    }

    pub fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.rank() as usize;
        let mut g = vec![vec![0; n]; n];
        let mut off = 0;
        for c in &self.components {
            let b = c.gram();
            for (i, row) in b.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    g[off + i][off + j] = x;
                }
            }
            off += c.rank() as usize;
        }
        g
    }

    pub fn lattice(&self) -> GramLattice {
        GramLattice { gram: self.gram() }
    }

    pub fn discriminant_group(&self) -> Result<Vec<u64>> {
        self.lattice().discriminant_group()
    }
}

impl fmt::Display for RootConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for RootConfiguration {
    type Err = Error;
    fn from_str(s: &str) -> Result<RootConfiguration> {
        let mut comps = Vec::new();
        for item in s.split(['+', ',']) {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let digits: String = item.chars().take_while(|c| c.is_ascii_digit()).collect();
            let count = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| Error::Input(item.into()))? };
            let t: RootType = item[digits.len()..].parse()?;
            comps.extend(std::iter::repeat(t).take(count));
        }
        RootConfiguration::new(comps)
    }
}

/// A lattice given by a symmetric integer Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramLattice {
    gram: Vec<Vec<i64>>,
}

impl GramLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<GramLattice> {
        let n = gram.len();
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Input("Gram matrix is not square".into()));
            }
            for (j, &x) in row.iter().enumerate() {
                if gram[j][i] != x {
                    return Err(Error::Input("Gram matrix is not symmetric".into()));
                }
            }
        }
        Ok(GramLattice { gram })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// Invariant factors of `L^∨ / L`.
    pub fn discriminant_group(&self) -> Result<Vec<u64>> {
        snf::discriminant_of_gram(&self.gram)
    }
}

/// Shorthand for the discriminant group of a configuration.
pub fn discriminant_group(cfg: &RootConfiguration) -> Result<Vec<u64>> {
    cfg.discriminant_group()
}

/// Mordell-Weil group `E8 / T`: free rank and torsion invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MWData {
    pub rank: u32,
    pub torsion: Vec<u64>,
}

impl fmt::Display for MWData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".to_string() } else { format!("Z^{}", self.rank) });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{}", t));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Result of [`mw_from_config`]: every quotient type met among the
/// embeddings that were enumerated, plus the rank-8 consistency checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MWReport {
    pub config: RootConfiguration,
    pub quotients: Vec<MWData>,
    /// False when the enumeration budget ran out before exhausting.
    pub exhaustive: bool,
    pub disc: Vec<u64>,
    /// `|MW_tors|^2 = |Disc(T)|`, for rank-8 configurations.
    pub order_identity: Option<bool>,
    /// `MW_tors ↪ Disc(T)`.
    pub mw_in_disc: Option<bool>,
    /// `MW_tors ⊕ MW_tors ↪ Disc(T)`.
    pub mw_squared_in_disc: Option<bool>,
}

pub fn mw_from_embedding(e: &Embedding) -> MWData {
    let m: snf::Matrix = (0..8).map(|k| e.images.iter().map(|r| r[k] as i128).collect()).collect();
    let (torsion, free) = snf::cokernel(&m);
    MWData { rank: free as u32, torsion }
}

/// Mordell-Weil groups of the configuration over its E8 embeddings. Fails
/// with a domain error when the configuration does not embed. Results are
/// memoised per process.
pub fn mw_from_config(cfg: &RootConfiguration, budget: u64) -> Result<MWReport> {
    static CACHE: OnceLock<Mutex<HashMap<(RootConfiguration, u64), Result<MWReport>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (cfg.clone(), budget);
    if let Some(r) = cache.lock().expect("cache lock").get(&key) {
        return r.clone();
    }
    let r = compute_mw(cfg, budget);
    cache.lock().expect("cache lock").insert(key, r.clone());
    r
}

fn compute_mw(cfg: &RootConfiguration, budget: u64) -> Result<MWReport> {
    let survey = survey_embeddings(cfg, budget)?;
    if survey.quotients.is_empty() {
        return Err(Error::Domain(format!("{} does not embed in E8", cfg)));
    }
    let disc = cfg.discriminant_group()?;
    let full = cfg.rank() == 8;
    let checks = |f: &dyn Fn(&MWData) -> bool| full.then(|| survey.quotients.iter().all(f));
    let order_identity = checks(&|q| group_order(&q.torsion).pow(2) == group_order(&disc));
    let mw_in_disc = checks(&|q| group_embeds(&q.torsion, &disc));
    let mw_squared_in_disc = checks(&|q| {
        let doubled: Vec<u64> = q.torsion.iter().chain(q.torsion.iter()).copied().collect();
        group_embeds(&doubled, &disc)
    });
    Ok(MWReport {
        config: cfg.clone(),
        quotients: survey.quotients,
        exhaustive: survey.exhaustive,
        disc,
        order_identity,
        mw_in_disc,
        mw_squared_in_disc,
    })
}
