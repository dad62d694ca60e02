//! The E8 root system in the basis of simple roots.

use std::collections::{BTreeSet, VecDeque};
use std::sync::OnceLock;

use super::RootType;

pub type Root = [i64; 8];

/// Gram matrix of the E8 simple roots (negative definite, Bourbaki order).
pub fn e8_gram() -> Vec<Vec<i64>> {
    RootType::E(8).gram()
}

pub fn e8_inner(a: &Root, b: &Root) -> i64 {
    let g = e8_gram_cached();
    let mut s = 0;
    for i in 0..8 {
        if a[i] == 0 {
            continue;
        }
        for j in 0..8 {
            s += a[i] * g[i][j] * b[j];
        }
    }
    s
}

fn e8_gram_cached() -> &'static Vec<Vec<i64>> {
    static G: OnceLock<Vec<Vec<i64>>> = OnceLock::new();
    G.get_or_init(e8_gram)
}

/// All 240 roots, sorted lexicographically, obtained as the closure of the
/// simple roots under simple reflections `s_i(v) = v + <v, α_i> α_i`.
pub fn e8_roots() -> &'static [Root] {
    static ROOTS: OnceLock<Vec<Root>> = OnceLock::new();
    ROOTS.get_or_init(|| {
        let g = e8_gram();
        let mut seen: BTreeSet<Root> = BTreeSet::new();
        let mut queue: VecDeque<Root> = VecDeque::new();
        for i in 0..8 {
            let mut r = [0; 8];
            r[i] = 1;
            seen.insert(r);
            queue.push_back(r);
        }
        while let Some(v) = queue.pop_front() {
            for i in 0..8 {
                let pairing: i64 = (0..8).map(|j| v[j] * g[j][i]).sum();
                let mut w = v;
                w[i] += pairing;
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().collect()
    })
}

/// `table[i][j] = <r_i, r_j>` for the sorted roots.
pub fn e8_inner_table() -> &'static Vec<Vec<i8>> {
    static T: OnceLock<Vec<Vec<i8>>> = OnceLock::new();
    T.get_or_init(|| {
        let roots = e8_roots();
        roots
            .iter()
            .map(|a| roots.iter().map(|b| e8_inner(a, b) as i8).collect())
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The standard model: vectors of Z^8 ∪ (Z+1/2)^8 with even coordinate
    /// sum and norm 2, written with doubled coordinates.
    fn doubled_model() -> BTreeSet<[i64; 8]> {
        let mut out = BTreeSet::new();
        for i in 0..8 {
            for j in i + 1..8 {
                for si in [-2, 2] {
                    for sj in [-2, 2] {
                        let mut v = [0; 8];
                        v[i] = si;
                        v[j] = sj;
                        out.insert(v);
                    }
                }
            }
        }
        for mask in 0u32..256 {
            if mask.count_ones() % 2 == 0 {
                let v: [i64; 8] = std::array::from_fn(|k| if mask >> k & 1 == 1 { -1 } else { 1 });
                out.insert(v);
            }
        }
        out
    }

    #[test]
    fn closure_matches_the_standard_model() {
        let model = doubled_model();
        assert_eq!(model.len(), 240);
        // Bourbaki simple roots, doubled
        let simple: [[i64; 8]; 8] = [
            [1, -1, -1, -1, -1, -1, -1, 1],
            [2, 2, 0, 0, 0, 0, 0, 0],
            [-2, 2, 0, 0, 0, 0, 0, 0],
            [0, -2, 2, 0, 0, 0, 0, 0],
            [0, 0, -2, 2, 0, 0, 0, 0],
            [0, 0, 0, -2, 2, 0, 0, 0],
            [0, 0, 0, 0, -2, 2, 0, 0],
            [0, 0, 0, 0, 0, -2, 2, 0],
        ];
        // their Euclidean Gram (divided by 4) is the Cartan matrix
        let g = e8_gram();
        for i in 0..8 {
            for j in 0..8 {
                let dot: i64 = (0..8).map(|k| simple[i][k] * simple[j][k]).sum();
                assert_eq!(dot / 4, -g[i][j]);
            }
        }
        let images: BTreeSet<[i64; 8]> = e8_roots()
            .iter()
            .map(|c| std::array::from_fn(|k| (0..8).map(|i| c[i] * simple[i][k]).sum()))
            .collect();
        assert_eq!(images, model);
    }

    #[test]
    fn roots_have_norm_minus_two_and_come_in_pairs() {
        let roots = e8_roots();
        assert_eq!(roots.len(), 240);
        let set: BTreeSet<Root> = roots.iter().copied().collect();
        for r in roots {
            assert_eq!(e8_inner(r, r), -2);
            assert!(set.contains(&r.map(|x| -x)));
        }
    }
}
