//! Exact linear algebra over `Q(q)` and over the integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::RationalFunction;

/// A sparse row: column index to nonzero entry.
pub type SparseRow = BTreeMap<usize, RationalFunction>;

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    /// One solution with every free variable set to zero.
    pub particular: Vec<RationalFunction>,
    /// Basis of the homogeneous solution space.
    pub kernel: Vec<Vec<RationalFunction>>,
}

fn eliminate(target: &mut SparseRow, pivot: &SparseRow, col: usize) {
    let Some(f) = target.get(&col).cloned() else { return };
    for (c, v) in pivot {
        let nv = target.get(c).cloned().unwrap_or_default().sub(&f.mul(v));
        if nv.is_zero() {
            target.remove(c);
        } else {
            target.insert(*c, nv);
        }
    }
}

fn row_size(r: &SparseRow) -> usize {
    r.values().map(RationalFunction::size).sum()
}

/// Solve `A x = b` by Gauss-Jordan elimination. Column `ncols` of each
/// augmented row holds the right-hand side. Returns `None` when the system
/// is inconsistent.
pub fn solve_sparse(rows: Vec<SparseRow>, rhs: Vec<RationalFunction>, ncols: usize) -> Option<Solution> {
    let mut rows: Vec<SparseRow> = rows
        .into_iter()
        .zip(rhs)
        .map(|(mut r, b)| {
            if !b.is_zero() {
                r.insert(ncols, b);
            }
            r
        })
        .filter(|r| !r.is_empty())
        .collect();

    let mut pivots: Vec<(usize, SparseRow)> = Vec::new();
    loop {
        // choose the row whose leading column is smallest, then the cheapest
        let Some(best) = (0..rows.len())
            .filter(|&k| !rows[k].is_empty())
            .min_by_key(|&k| (*rows[k].keys().next().unwrap(), rows[k].len(), row_size(&rows[k])))
        else {
            break;
        };
        let mut prow = rows.swap_remove(best);
        let col = *prow.keys().next().unwrap();
        if col == ncols {
            return None;
        }
        let inv = prow[&col].inv().expect("pivot is nonzero");
        for v in prow.values_mut() {
            *v = v.mul(&inv);
        }
        for r in rows.iter_mut() {
            eliminate(r, &prow, col);
        }
        rows.retain(|r| !r.is_empty());
        for (_, p) in pivots.iter_mut() {
            eliminate(p, &prow, col);
        }
        pivots.push((col, prow));
    }

    let pivot_cols: BTreeMap<usize, &SparseRow> = pivots.iter().map(|(c, r)| (*c, r)).collect();
    let mut particular = vec![RationalFunction::zero(); ncols];
    for (&c, r) in &pivot_cols {
        if let Some(b) = r.get(&ncols) {
            particular[c] = b.clone();
        }
    }
    let mut kernel = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_cols.contains_key(c)) {
        let mut v = vec![RationalFunction::zero(); ncols];
        v[free] = RationalFunction::one();
        for (&c, r) in &pivot_cols {
            if let Some(a) = r.get(&free) {
                v[c] = a.neg();
            }
        }
        kernel.push(v);
    }
    Some(Solution { particular, kernel })
}

/// Dense convenience wrapper.
pub fn solve(a: &[Vec<RationalFunction>], b: &[RationalFunction]) -> Option<Solution> {
    let ncols = a.first().map_or(0, Vec::len);
    let rows = a
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect())
        .collect();
    solve_sparse(rows, b.to_vec(), ncols)
}

/// Rank of a dense matrix.
pub fn rank(a: &[Vec<RationalFunction>]) -> usize {
    let ncols = a.first().map_or(0, Vec::len);
    let zeros = vec![RationalFunction::zero(); a.len()];
    match solve(a, &zeros) {
        Some(s) => ncols - s.kernel.len(),
        None => unreachable!("homogeneous systems are consistent"),
    }
}

pub fn int_matrix(a: &[Vec<i64>]) -> Vec<Vec<RationalFunction>> {
    a.iter().map(|r| r.iter().map(|&x| RationalFunction::from_int(x)).collect()).collect()
}

/// Index of the lattice spanned by the rows of `a` (an `n x k` integer
/// matrix) in `Z^k`: the gcd of the maximal minors, or 0 when the rows do
/// not have full rank `k`.
pub fn lattice_index(a: &[Vec<i64>], k: usize) -> BigInt {
    let mut m: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut det = BigInt::one();
    let mut top = 0;
    for col in 0..k {
        // gcd-reduce column entries below `top` into row `top`
        loop {
            let nz: Vec<usize> = (top..m.len()).filter(|&r| !m[r][col].is_zero()).collect();
            if nz.is_empty() {
                return BigInt::zero();
            }
            let piv = *nz.iter().min_by_key(|&&r| m[r][col].abs()).unwrap();
            m.swap(top, piv);
            let mut done = true;
            for r in top + 1..m.len() {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = m[r][col].div_floor(&m[top][col]);
                let prow = m[top].clone();
                for (x, p) in m[r].iter_mut().zip(&prow) {
                    *x -= &f * p;
                }
                if !m[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        det *= m[top][col].abs();
        top += 1;
    }
    det
}
