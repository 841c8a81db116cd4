//! Dense exact linear algebra over a [`Field`].

use crate::field::{Field, FieldElem};

/// Row-reduces in place; returns the pivot column of each nonzero row.
fn rref(k: &Field, m: &mut [Vec<FieldElem>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !k.is_zero(&m[r][c])) else { continue };
        m.swap(row, p);
        let inv = k.inv(&m[row][c]).expect("nonzero pivot");
        for x in m[row].iter_mut() {
            *x = k.mul(x, &inv);
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !k.is_zero(&other[c]) {
                let f = other[c].clone();
                for (x, y) in other.iter_mut().zip(&pivot_row) {
                    *x = k.sub(x, &k.mul(&f, y));
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    pivots
}

pub fn rank(k: &Field, mut rows: Vec<Vec<FieldElem>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    rref(k, &mut rows, ncols).len()
}

/// Some `x` with `Σ_j x_j cols[j] = rhs`, or `None`.
pub fn solve(k: &Field, cols: &[Vec<FieldElem>], rhs: &[FieldElem]) -> Option<Vec<FieldElem>> {
    let n = cols.len();
    let mut m: Vec<Vec<FieldElem>> = (0..rhs.len())
        .map(|i| {
            let mut row: Vec<FieldElem> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let pivots = rref(k, &mut m, n + 1);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![k.zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][n].clone();
    }
    Some(x)
}
