//! Finite abelian groups given by invariant factors.

use std::collections::BTreeMap;

use num_integer::Integer;

pub fn group_order(g: &[u64]) -> u64 {
    g.iter().product()
}

pub fn group_exponent(g: &[u64]) -> u64 {
    g.iter().fold(1, |acc, &x| acc.lcm(&x))
}

/// For each prime, the exponents of the cyclic `p`-parts in decreasing order.
pub fn primary_parts(g: &[u64]) -> BTreeMap<u64, Vec<u32>> {
    let mut out: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &n in g {
        let mut n = n;
        let mut p = 2;
        while n > 1 {
            if p * p > n {
                p = n;
            }
            if n % p == 0 {
                let mut e = 0;
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                out.entry(p).or_default().push(e);
            }
            p += 1;
        }
    }
    for v in out.values_mut() {
        v.sort_unstable_by(|a, b| b.cmp(a));
    }
    out
}

/// Whether `sub` is isomorphic to a subgroup of `sup`: for every prime the
/// partition of `sub` fits inside the partition of `sup`.
pub fn group_embeds(sub: &[u64], sup: &[u64]) -> bool {
    let a = primary_parts(sub);
    let b = primary_parts(sup);
    a.iter().all(|(p, la)| {
        let empty = Vec::new();
        let lb = b.get(p).unwrap_or(&empty);
        la.len() <= lb.len() && la.iter().zip(lb).all(|(x, y)| x <= y)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primary_decomposition() {
        let parts = primary_parts(&[12, 18]);
        assert_eq!(parts[&2], vec![2, 1]);
        assert_eq!(parts[&3], vec![2, 1]);
    }

    #[test]
    fn embedding_of_abelian_groups() {
        assert!(group_embeds(&[3], &[9]));
        assert!(!group_embeds(&[3, 3], &[9]));
        assert!(group_embeds(&[2, 2], &[2, 2, 2, 2]));
        assert!(!group_embeds(&[4, 4], &[8, 2]));
        assert!(group_embeds(&[4], &[8, 2]));
        assert!(group_embeds(&[], &[]));
        assert_eq!(group_exponent(&[2, 4, 3]), 12);
    }
}
