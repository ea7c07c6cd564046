//! Plain Gauss-Jordan elimination on dense row-major matrices.

use num_traits::Zero;

use crate::field::{El, Kf};

pub type Dense = Vec<Vec<El>>;

pub fn zeros(rows: usize, cols: usize) -> Dense {
    vec![vec![El::zero(); cols]; rows]
}

/// Reduces in place to reduced row echelon form; returns the pivot columns.
pub fn rref(k: Kf, a: &mut Dense) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(s) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, s);
        let inv = k.inv(&a[r][c]);
        for x in a[r].iter_mut() {
            *x = k.mul(x, &inv);
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..cols {
                if !a[r][j].is_zero() {
                    let t = k.mul(&f, &a[r][j]);
                    a[i][j] = k.sub(&a[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(k: Kf, mut a: Dense) -> usize {
    rref(k, &mut a).len()
}

/// Basis of `{x : a x = 0}`, `a` having `cols` columns.
pub fn kernel(k: Kf, mut a: Dense, cols: usize) -> Vec<Vec<El>> {
    let pivots = rref(k, &mut a);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![El::zero(); cols];
        x[free] = k.one();
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = k.neg(&a[r][free]);
        }
        out.push(x);
    }
    out
}
