//! Smith normal form over the integers.
//!
//! Elimination with a gcd pivot: at each stage the entry of smallest nonzero
//! absolute value in the trailing block (first in row-major order on ties)
//! becomes the pivot, its row and column are cleared by Euclidean steps, and
//! a row that breaks divisibility is added into the pivot row. Entries are
//! arbitrary precision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Diagonal of the Smith normal form: `d_1 | d_2 | ... | d_r`, all positive,
/// with `r` the rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub invariants: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

/// Computes the invariant factors of a rectangular integer matrix given as
/// rows. Rows of unequal length are padded with zeros.
pub fn smith_normal_form<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> SmithForm {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let mut row: Vec<BigInt> = r.iter().map(|&x| x.into()).collect();
            row.resize(cols, BigInt::zero());
            row
        })
        .collect();
    smith_in_place(&mut m, cols)
}

fn smith_in_place(m: &mut [Vec<BigInt>], cols: usize) -> SmithForm {
    let rows = m.len();
    let mut invariants = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = smallest_entry(m, t, cols) else { break };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                for j in t..cols {
                    let delta = &q * &m[t][j];
                    m[i][j] -= delta;
                }
                if !m[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for row in m.iter_mut().skip(t) {
                    let delta = &q * &row[t];
                    row[j] -= delta;
                }
                if !m[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // Row and column cleared; enforce divisibility of the block.
                let p = m[t][t].clone();
                let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&p)));
                match offender {
                    None => break,
                    Some(i) => {
                        for j in t..cols {
                            let add = m[i][j].clone();
                            m[t][j] += add;
                        }
                    }
                }
            }
            // Re-pivot on the smallest entry of row t and column t.
            let (r, c) = smallest_in_cross(m, t, cols);
            m.swap(t, r);
            for row in m.iter_mut() {
                row.swap(t, c);
            }
        }
        invariants.push(m[t][t].abs());
        t += 1;
    }
    debug_assert!(invariants.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
    SmithForm { invariants }
}

fn smallest_entry(m: &[Vec<BigInt>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().take(cols).skip(t) {
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn smallest_in_cross(m: &[Vec<BigInt>], t: usize, cols: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut best_abs: Option<BigInt> = if m[t][t].is_zero() { None } else { Some(m[t][t].abs()) };
    let candidates = (t + 1..cols).map(|j| (t, j)).chain((t + 1..m.len()).map(|i| (i, t)));
    for (i, j) in candidates {
        let x = &m[i][j];
        if x.is_zero() {
            continue;
        }
        let a = x.abs();
        if best_abs.as_ref().is_none_or(|b| a < *b) {
            best = (i, j);
            best_abs = Some(a);
        }
    }
    best
}

/// Helper for callers holding machine integers: invariants as `i64` where they fit.
pub fn invariants_i64(form: &SmithForm) -> Option<Vec<i64>> {
    form.invariants.iter().map(|d| i64::try_from(d).ok()).collect()
}
