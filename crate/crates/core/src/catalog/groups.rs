//! Symbolic descriptors for automorphism groups. Only orders, exponents and
//! the possible finite subgroups are checked; the positive-dimensional and
//! infinitesimal groups have no finite model here.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupDesc {
    Trivial,
    Cyclic(u64),
    Quaternion,
    /// The group scheme of n-th roots of unity.
    Mu(u64),
    Additive,
    Multiplicative,
    /// `G_a ⋊ G_m`.
    Affine,
    Product(Vec<GroupDesc>),
    SemiDirect(Box<GroupDesc>, Box<GroupDesc>),
    /// An extension of the second group by the first, known only by its label.
    Extension(Box<GroupDesc>, Box<GroupDesc>),
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn is_power_of(n: u64, p: u64) -> bool {
    if p < 2 {
        return n == 1;
    }
    let mut n = n;
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

impl GroupDesc {
    /// Order as a group scheme; `None` when positive-dimensional.
    pub fn order(&self) -> Option<u64> {
        match self {
            GroupDesc::Trivial => Some(1),
            GroupDesc::Cyclic(n) | GroupDesc::Mu(n) => Some(*n),
            GroupDesc::Quaternion => Some(8),
            GroupDesc::Additive | GroupDesc::Multiplicative | GroupDesc::Affine => None,
            GroupDesc::Product(parts) => parts.iter().map(|g| g.order()).product(),
            GroupDesc::SemiDirect(a, b) | GroupDesc::Extension(a, b) => Some(a.order()? * b.order()?),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// Exponent of a finite descriptor. Extensions only give an upper bound,
    /// so they report `None` unless split.
    pub fn exponent(&self) -> Option<u64> {
        match self {
            GroupDesc::Trivial => Some(1),
            GroupDesc::Cyclic(n) | GroupDesc::Mu(n) => Some(*n),
            GroupDesc::Quaternion => Some(4),
            GroupDesc::Product(parts) => parts.iter().try_fold(1u64, |acc, g| Some(acc.lcm(&g.exponent()?))),
            _ => None,
        }
    }

    /// Whether a finite subgroup of the given order and exponent can occur,
    /// over a field of characteristic `p`. Exact for the atoms, a necessary
    /// condition for products and extensions.
    pub fn admits(&self, order: u64, exponent: u64, p: u64) -> bool {
        if order % exponent != 0 {
            return false;
        }
        match self {
            GroupDesc::Trivial => order == 1,
            GroupDesc::Cyclic(n) => n % order == 0 && exponent == order,
            // μ_n is étale cyclic away from p; its p-part is infinitesimal and
            // contains no nontrivial constant subgroup
            GroupDesc::Mu(n) => {
                let mut m = *n;
                while p > 1 && m % p == 0 {
                    m /= p;
                }
                m % order == 0 && exponent == order
            }
            GroupDesc::Quaternion => matches!((order, exponent), (1, 1) | (2, 2) | (4, 4) | (8, 4)),
            GroupDesc::Additive => {
                if p == 0 {
                    order == 1
                } else {
                    is_power_of(order, p) && (exponent == 1 || exponent == p)
                }
            }
            GroupDesc::Multiplicative => exponent == order && (p == 0 || order % p != 0),
            GroupDesc::Affine => {
                // a finite subgroup is an elementary abelian p-group extended
                // by a cyclic group of order prime to p
                let mut m = order;
                while p > 1 && m % p == 0 {
                    m /= p;
                }
                let pp = order / m;
                (p == 0 && pp == 1 || is_power_of(pp, p)) && (m * if pp > 1 { p } else { 1 }) % exponent == 0
            }
            GroupDesc::Product(parts) => admits_split(parts, order, exponent, p),
            GroupDesc::SemiDirect(a, b) | GroupDesc::Extension(a, b) => {
                admits_split(&[(**a).clone(), (**b).clone()], order, exponent, p)
            }
        }
    }

    /// `other ⊆ self` as far as the descriptors can tell.
    pub fn contains(&self, other: &GroupDesc, p: u64) -> bool {
        if self == other || *other == GroupDesc::Trivial {
            return true;
        }
        if matches!(other, GroupDesc::Mu(_)) && self.has_factor(&GroupDesc::Multiplicative) {
            return true;
        }
        match (other.order(), other.exponent()) {
            (Some(o), Some(e)) => self.admits(o, e, p),
            // Q8-like extensions report no exponent; try every exponent
            (Some(o), None) => divisors(o).into_iter().any(|e| self.admits(o, e, p)),
            (None, _) => match self {
                GroupDesc::Product(parts) => parts.iter().any(|g| g.contains(other, p)),
                GroupDesc::SemiDirect(a, b) | GroupDesc::Extension(a, b) => {
                    a.contains(other, p) || b.contains(other, p)
                }
                GroupDesc::Affine => matches!(other, GroupDesc::Additive | GroupDesc::Multiplicative),
                _ => false,
            },
        }
    }

    /// Whether `G_a` (resp. `G_m`) occurs as a factor.
    pub fn has_factor(&self, atom: &GroupDesc) -> bool {
        match self {
            GroupDesc::Affine => matches!(atom, GroupDesc::Additive | GroupDesc::Multiplicative),
            GroupDesc::Product(parts) => parts.iter().any(|g| g.has_factor(atom)),
            GroupDesc::SemiDirect(a, b) | GroupDesc::Extension(a, b) => a.has_factor(atom) || b.has_factor(atom),
            g => g == atom,
        }
    }
}

/// A subgroup of `A × B` (or of an extension of `B` by `A`) has order
/// `|H ∩ A| · |image in B|` and exponent dividing the product of theirs.
fn admits_split(parts: &[GroupDesc], order: u64, exponent: u64, p: u64) -> bool {
    match parts {
        [] => order == 1,
        [g] => g.admits(order, exponent, p),
        [g, rest @ ..] => divisors(order).into_iter().any(|o1| {
            let o2 = order / o1;
            divisors(o1).into_iter().any(|e1| {
                g.admits(o1, e1, p)
                    && divisors(o2).into_iter().any(|e2| {
                        (e1 * e2) % exponent == 0 && admits_split(rest, o2, e2, p)
                    })
            })
        }),
    }
}

impl fmt::Display for GroupDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |g: &GroupDesc| {
            let s = g.to_string();
            if s.contains(' ') {
                format!("({})", s)
            } else {
                s
            }
        };
        match self {
            GroupDesc::Trivial => write!(f, "id"),
            GroupDesc::Cyclic(n) => write!(f, "Z/{}", n),
            GroupDesc::Quaternion => write!(f, "Q8"),
            GroupDesc::Mu(n) => write!(f, "mu_{}", n),
            GroupDesc::Additive => write!(f, "G_a"),
            GroupDesc::Multiplicative => write!(f, "G_m"),
            GroupDesc::Affine => write!(f, "Aff"),
            GroupDesc::Product(parts) => {
                if parts.len() > 1 && parts.iter().all(|g| g == &parts[0]) {
                    return write!(f, "({})^{}", parts[0], parts.len());
                }
                write!(f, "{}", parts.iter().map(wrap).collect::<Vec<_>>().join(" x "))
            }
            GroupDesc::SemiDirect(a, b) => write!(f, "{} x| {}", wrap(a), wrap(b)),
            GroupDesc::Extension(a, b) => write!(f, "{} . {}", wrap(a), wrap(b)),
        }
    }
}

fn split_top(s: &str, sep: &str) -> Option<(String, String)> {
    let mut depth = 0i32;
    let bytes = s.as_bytes();
    let mut i = 0;
    while i + sep.len() <= s.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && s[i..].starts_with(sep) {
            return Some((s[..i].trim().to_string(), s[i + sep.len()..].trim().to_string()));
        }
        i += 1;
    }
    None
}

impl FromStr for GroupDesc {
    type Err = Error;
    /// `id`, `Z/n`, `Q8`, `mu_n`, `G_a`, `G_m`, `Aff`, `A x B`, `(A)^k`,
    /// `A x| B`, `A . B`.
    fn from_str(s: &str) -> Result<GroupDesc> {
        let s = s.trim();
        let bad = || Error::Input(format!("unknown group descriptor '{}'", s));
        if let Some((a, b)) = split_top(s, " . ") {
            return Ok(GroupDesc::Extension(Box::new(a.parse()?), Box::new(b.parse()?)));
        }
        if let Some((a, b)) = split_top(s, " x| ") {
            return Ok(GroupDesc::SemiDirect(Box::new(a.parse()?), Box::new(b.parse()?)));
        }
        if let Some((a, b)) = split_top(s, " x ") {
            let mut parts = vec![a.parse()?];
            match b.parse()? {
                GroupDesc::Product(rest) => parts.extend(rest),
                g => parts.push(g),
            }
            return Ok(GroupDesc::Product(parts));
        }
        if let Some((base, k)) = s.rsplit_once('^') {
            if base.starts_with('(') && base.ends_with(')') {
                let g: GroupDesc = base[1..base.len() - 1].parse()?;
                let k: usize = k.parse().map_err(|_| bad())?;
                return Ok(GroupDesc::Product(vec![g; k]));
            }
        }
        if s.starts_with('(') && s.ends_with(')') {
            return s[1..s.len() - 1].parse();
        }
        Ok(match s {
            "id" | "1" => GroupDesc::Trivial,
            "Q8" => GroupDesc::Quaternion,
            "G_a" => GroupDesc::Additive,
            "G_m" => GroupDesc::Multiplicative,
            "Aff" => GroupDesc::Affine,
            _ => {
                if let Some(n) = s.strip_prefix("Z/") {
                    match n.parse().map_err(|_| bad())? {
                        0 => return Err(bad()),
                        1 => GroupDesc::Trivial,
                        n => GroupDesc::Cyclic(n),
                    }
                } else if let Some(n) = s.strip_prefix("mu_") {
                    match n.parse().map_err(|_| bad())? {
                        0 => return Err(bad()),
                        n => GroupDesc::Mu(n),
                    }
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

impl Serialize for GroupDesc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupDesc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Order of `G / H` for finite descriptors.
pub fn quotient_order(g: &GroupDesc, h: &GroupDesc) -> Option<u64> {
    let (a, b) = (g.order()?, h.order()?);
    (a % b == 0).then_some(a / b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GroupDesc {
        s.parse().unwrap()
    }

    #[test]
    fn round_trips() {
        for s in ["id", "Z/6", "G_m", "Z/2 x G_a", "Q8", "(Z/2)^2 . G_a", "Aff", "mu_4", "G_a x| Z/5", "(Z/2)^2"] {
            assert_eq!(g(s).to_string(), s, "{}", s);
        }
        assert!("Z/0".parse::<GroupDesc>().is_err());
        assert!("SL2".parse::<GroupDesc>().is_err());
    }

    #[test]
    fn orders_and_exponents() {
        assert_eq!(g("(Z/2)^2").order(), Some(4));
        assert_eq!(g("(Z/2)^2").exponent(), Some(2));
        assert_eq!(g("Q8").exponent(), Some(4));
        assert_eq!(g("Z/2 x G_a").order(), None);
        assert_eq!(quotient_order(&g("Z/4"), &g("Z/2")), Some(2));
    }

    #[test]
    fn containments_from_the_tables() {
        assert!(g("G_m").contains(&g("Z/6"), 5));
        assert!(!g("G_m").contains(&g("Z/6"), 3));
        assert!(g("Z/2 x G_a").contains(&g("Z/6"), 3));
        assert!(g("Aff").contains(&g("Z/2"), 3));
        assert!(g("(Z/2)^2 . G_a").contains(&g("Q8"), 2));
        assert!(g("G_a").contains(&g("(Z/2)^2"), 2));
        assert!(!g("G_a").contains(&g("(Z/2)^2"), 3));
        assert!(g("G_m").contains(&g("mu_4"), 2));
        assert!(g("Z/4").contains(&g("Z/2"), 0));
        assert!(!g("Z/2").contains(&g("Z/4"), 0));
        assert!(!g("Z/4").contains(&g("(Z/2)^2"), 0));
        assert!(g("G_a x| Z/5").contains(&g("id"), 3));
        assert!(g("Aff").contains(&g("G_a"), 3));
    }
}
