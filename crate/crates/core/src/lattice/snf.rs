//! Smith normal form over the integers.

use crate::{Error, Result};

pub type Matrix = Vec<Vec<i128>>;

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal with
/// `d[0] | d[1] | ...`, all non-negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: Matrix,
    pub v: Matrix,
    pub d: Matrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<i128> {
        let n = self.d.len().min(self.d.first().map_or(0, |r| r.len()));
        (0..n).map(|i| self.d[i][i]).collect()
    }
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![0i128; m]; n];
    for i in 0..n {
        for l in 0..k {
            let x = a[i][l];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * b[l][j];
            }
        }
    }
    out
}

pub fn to_i128(a: &[Vec<i64>]) -> Matrix {
    a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

fn swap_cols(a: &mut Matrix, i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// row_i += c * row_j
fn add_row(a: &mut Matrix, i: usize, j: usize, c: i128) {
    if c == 0 {
        return;
    }
    let rj = a[j].clone();
    for (x, y) in a[i].iter_mut().zip(rj) {
        *x += c * y;
    }
}

/// col_i += c * col_j
fn add_col(a: &mut Matrix, i: usize, j: usize, c: i128) {
    if c == 0 {
        return;
    }
    for row in a.iter_mut() {
        row[i] += c * row[j];
    }
}

pub fn smith_normal_form(a: &Matrix) -> Snf {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut d = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut k = 0;
    while k < rows.min(cols) {
        // pivot: smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if d[i][j] != 0 && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(k, pi);
        u.swap(k, pi);
        swap_cols(&mut d, k, pj);
        swap_cols(&mut v, k, pj);

        let mut clean = true;
        for i in k + 1..rows {
            let q = d[i][k].div_euclid(d[k][k]);
            add_row(&mut d, i, k, -q);
            add_row(&mut u, i, k, -q);
            if d[i][k] != 0 {
                clean = false;
            }
        }
        for j in k + 1..cols {
            let q = d[k][j].div_euclid(d[k][k]);
            add_col(&mut d, j, k, -q);
            add_col(&mut v, j, k, -q);
            if d[k][j] != 0 {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // enforce divisibility into the trailing block
        let pivot = d[k][k];
        let offender = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| d[i][j] % pivot != 0));
        if let Some(i) = offender {
            add_row(&mut d, k, i, 1);
            add_row(&mut u, k, i, 1);
            continue;
        }
        if d[k][k] < 0 {
            for x in d[k].iter_mut() {
                *x = -*x;
            }
            for x in u[k].iter_mut() {
                *x = -*x;
            }
        }
        k += 1;
    }
    Snf { u, v, d }
}

/// Invariant factors `> 1` of the cokernel, plus the number of zero
/// diagonal entries (free rank contributed by the rows).
pub fn cokernel(a: &Matrix) -> (Vec<u64>, usize) {
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    let rows = a.len();
    let torsion: Vec<u64> = diag.iter().filter(|&&x| x > 1).map(|&x| x as u64).collect();
    let nonzero = diag.iter().filter(|&&x| x != 0).count();
    (torsion, rows - nonzero)
}

/// Invariant factors of `Z^n / G Z^n` for a nondegenerate Gram matrix.
pub fn discriminant_of_gram(gram: &[Vec<i64>]) -> Result<Vec<u64>> {
    let (torsion, free) = cokernel(&to_i128(gram));
    if free > 0 {
        return Err(Error::Domain("degenerate form".into()));
    }
    Ok(torsion)
}
