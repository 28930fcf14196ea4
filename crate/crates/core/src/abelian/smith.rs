//! Smith normal form over the integers.
//!
//! Pivoting always picks a nonzero entry of minimal absolute value from the
//! active block, scanning rows first and then columns, so results are
//! reproducible entry for entry.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::matrix::{checked_add, checked_mul, IntegerMatrix, SparseMatrix};

/// `u * source * v == d` with `u`, `v` unimodular and `d` in Smith form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub source: IntegerMatrix,
    /// Inverse of `u`, tracked alongside it.
    pub u_inv: IntegerMatrix,
    /// Inverse of `v`, tracked alongside it.
    pub v_inv: IntegerMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries of `d`, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<i64> {
        self.d.diagonal().into_iter().filter(|&x| x != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.d.diagonal().iter().filter(|&&x| x != 0).count()
    }
}

fn min_abs_in_block(d: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, i64)> = None;
    for r in t..d.rows() {
        for c in t..d.cols() {
            let a = d.get(r, c).abs();
            if a != 0 && best.is_none_or(|(_, _, b)| a < b) {
                best = Some((r, c, a));
                if a == 1 {
                    return Some((r, c));
                }
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

/// Computes the Smith normal form of `a` together with both transforms.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut u_inv = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);
    let mut v_inv = IntegerMatrix::identity(n);

    let swap_rows = |d: &mut IntegerMatrix, u: &mut IntegerMatrix, ui: &mut IntegerMatrix, a: usize, b: usize| {
        d.swap_rows(a, b);
        u.swap_rows(a, b);
        ui.swap_cols(a, b);
    };
    let swap_cols = |d: &mut IntegerMatrix, v: &mut IntegerMatrix, vi: &mut IntegerMatrix, a: usize, b: usize| {
        d.swap_cols(a, b);
        v.swap_cols(a, b);
        vi.swap_rows(a, b);
    };
    // row[dst] += f * row[src]
    let row_op = |d: &mut IntegerMatrix, u: &mut IntegerMatrix, ui: &mut IntegerMatrix, dst: usize, src: usize, f: i64| {
        d.add_row_multiple(dst, src, f);
        u.add_row_multiple(dst, src, f);
        ui.add_col_multiple(src, dst, -f);
    };
    // col[dst] += f * col[src]
    let col_op = |d: &mut IntegerMatrix, v: &mut IntegerMatrix, vi: &mut IntegerMatrix, dst: usize, src: usize, f: i64| {
        d.add_col_multiple(dst, src, f);
        v.add_col_multiple(dst, src, f);
        vi.add_row_multiple(src, dst, -f);
    };

    for t in 0..m.min(n) {
        let Some((pr, pc)) = min_abs_in_block(&d, t) else {
            break;
        };
        swap_rows(&mut d, &mut u, &mut u_inv, t, pr);
        swap_cols(&mut d, &mut v, &mut v_inv, t, pc);

        loop {
            let p = d.get(t, t);
            let mut residue = false;
            for r in t + 1..m {
                let x = d.get(r, t);
                if x != 0 {
                    row_op(&mut d, &mut u, &mut u_inv, r, t, -x.div_euclid(p));
                    residue |= d.get(r, t) != 0;
                }
            }
            for c in t + 1..n {
                let x = d.get(t, c);
                if x != 0 {
                    col_op(&mut d, &mut v, &mut v_inv, c, t, -x.div_euclid(p));
                    residue |= d.get(t, c) != 0;
                }
            }
            if residue {
                // a remainder smaller than the pivot survived; promote the
                // smallest entry of row t / column t and sweep again
                let mut best = (t, t, d.get(t, t).abs());
                for r in t + 1..m {
                    let a = d.get(r, t).abs();
                    if a != 0 && a < best.2 {
                        best = (r, t, a);
                    }
                }
                for c in t + 1..n {
                    let a = d.get(t, c).abs();
                    if a != 0 && a < best.2 {
                        best = (t, c, a);
                    }
                }
                swap_rows(&mut d, &mut u, &mut u_inv, t, best.0);
                swap_cols(&mut d, &mut v, &mut v_inv, t, best.1);
                continue;
            }
            // row and column are clear; enforce divisibility of the block
            let bad = (t + 1..m).find(|&r| (t + 1..n).any(|c| d.get(r, c) % p != 0));
            match bad {
                Some(r) => row_op(&mut d, &mut u, &mut u_inv, t, r, 1),
                None => break,
            }
        }
        if d.get(t, t) < 0 {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }

    SmithForm {
        u,
        d,
        v,
        source: a.clone(),
        u_inv,
        v_inv,
    }
}

/// Nonzero invariant factors of a sparse matrix, in divisibility order.
///
/// Unit pivots are eliminated directly on the sparse structure, choosing the
/// sparsest column and then the sparsest row; whatever remains once no unit
/// pivot is left goes through the dense [`smith_normal_form`].
pub fn invariant_factors_sparse(a: &SparseMatrix) -> Vec<i64> {
    let mut rows: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); a.rows()];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); a.cols()];
    for (c, rs) in col_rows.iter_mut().enumerate() {
        for &(r, v) in a.column(c) {
            rows[r].insert(c, v);
            rs.insert(r);
        }
    }
    let mut units = 0usize;
    loop {
        let mut pivot: Option<(usize, usize, usize, usize)> = None; // (col_len, row_len, r, c)
        for (c, rs) in col_rows.iter().enumerate() {
            if rs.is_empty() || pivot.is_some_and(|p| rs.len() > p.0) {
                continue;
            }
            for &r in rs {
                if rows[r][&c].abs() == 1 {
                    let cand = (rs.len(), rows[r].len(), r, c);
                    if pivot.is_none_or(|p| (cand.0, cand.1) < (p.0, p.1)) {
                        pivot = Some(cand);
                    }
                }
            }
            if pivot.is_some_and(|p| p.0 == 1 && p.1 == 1) {
                break;
            }
        }
        let Some((_, _, pr, pc)) = pivot else { break };
        let pv = rows[pr][&pc];
        let pivot_row: Vec<(usize, i64)> = rows[pr].iter().map(|(&c, &v)| (c, v)).collect();
        let others: Vec<usize> = col_rows[pc].iter().copied().filter(|&r| r != pr).collect();
        for r in others {
            // pv is a unit, so pv^-1 == pv
            let f = checked_mul(rows[r][&pc], pv);
            for &(c, v) in &pivot_row {
                let cur = rows[r].get(&c).copied().unwrap_or(0);
                let nv = checked_add(cur, -checked_mul(f, v));
                if nv == 0 {
                    rows[r].remove(&c);
                    col_rows[c].remove(&r);
                } else {
                    if cur == 0 {
                        col_rows[c].insert(r);
                    }
                    rows[r].insert(c, nv);
                }
            }
        }
        for &(c, _) in &pivot_row {
            col_rows[c].remove(&pr);
        }
        rows[pr].clear();
        units += 1;
    }

    let live_rows: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..col_rows.len()).filter(|&c| !col_rows[c].is_empty()).collect();
    let mut factors = vec![1; units];
    if !live_rows.is_empty() {
        let col_pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut dense = IntegerMatrix::zeros(live_rows.len(), live_cols.len());
        for (i, &r) in live_rows.iter().enumerate() {
            for (&c, &v) in &rows[r] {
                dense.set(i, col_pos[&c], v);
            }
        }
        factors.extend(smith_normal_form(&dense).invariant_factors());
    }
    factors
}

/// Rank of a sparse integer matrix.
pub fn rank_sparse(a: &SparseMatrix) -> usize {
    invariant_factors_sparse(a).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntegerMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntegerMatrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntegerMatrix::identity(a.cols()));
        assert!(s.d.is_diagonal());
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntegerMatrix::identity(2));
        assert_eq!(s.d, IntegerMatrix::identity(2));
    }

    #[test]
    fn zero_matrix() {
        let z = IntegerMatrix::zeros(2, 3);
        let s = check(&z);
        assert_eq!(s.d, z);
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn two_by_two() {
        let s = check(&IntegerMatrix::from_rows(&[[2, 4], [6, 8]]));
        assert_eq!(s.d.diagonal(), vec![2, 4]);
    }

    #[test]
    fn non_divisible_diagonal_is_repaired() {
        let s = check(&IntegerMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(s.d.diagonal(), vec![1, 6]);
    }

    #[test]
    fn sparse_agrees_with_dense() {
        let a = IntegerMatrix::from_rows(&[[2, 4, 0, 1], [6, 8, 0, 1], [0, 0, 3, 3], [1, 1, 1, 1]]);
        let dense = smith_normal_form(&a).invariant_factors();
        assert_eq!(invariant_factors_sparse(&SparseMatrix::from_dense(&a)), dense);
    }

    #[test]
    fn empty_shapes() {
        let a = IntegerMatrix::zeros(2, 0);
        let s = check(&a);
        assert_eq!(s.rank(), 0);
        assert!(invariant_factors_sparse(&SparseMatrix::zeros(0, 4)).is_empty());
    }
}
