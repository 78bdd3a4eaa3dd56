//! Dense exact linear algebra over `RatFunc`. Matrices are row-major.

use super::{RatFunc, Var};

pub type Matrix = Vec<Vec<RatFunc>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        // prefer the pivot with the smallest numerator degree to limit growth
        let Some(p) = (row..m.len())
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r][col].num().degree() + m[r][col].den().degree())
        else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("nonzero pivot");
        let pivot_row: Vec<RatFunc> = m[row].iter().map(|x| x * &inv).collect();
        m[row] = pivot_row;
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..m[row].len() {
                if !m[row][c].is_zero() {
                    let d = &f * &m[row][c];
                    m[r][c] = &m[r][c] - &d;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of the right null space {x : m x = 0}.
pub fn nullspace(m: &Matrix, ncols: usize, var: Var) -> Vec<Vec<RatFunc>> {
    let mut a = m.clone();
    let pivots = rref(&mut a, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![RatFunc::zero(var); ncols];
            x[f] = RatFunc::one(var);
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -&a[r][f];
            }
            x
        })
        .collect()
}

/// Solves m x = b for a full-column-rank m; None if singular or inconsistent.
pub fn solve(m: &Matrix, b: &[RatFunc], var: Var) -> Option<Vec<RatFunc>> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut a: Matrix = m.iter().zip(b).map(|(row, bi)| {
        let mut r = row.clone();
        r.push(bi.clone());
        r
    }).collect();
    let pivots = rref(&mut a, ncols + 1);
    if pivots.len() != ncols || pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![RatFunc::zero(var); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = a[r][ncols].clone();
    }
    Some(x)
}

/// Inverse of a square matrix, or None if singular.
pub fn inverse(m: &Matrix, var: Var) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m.iter().enumerate().map(|(i, row)| {
        let mut r = row.clone();
        r.extend((0..n).map(|j| if i == j { RatFunc::one(var) } else { RatFunc::zero(var) }));
        r
    }).collect();
    let pivots = rref(&mut a, n);
    if pivots.len() != n {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
