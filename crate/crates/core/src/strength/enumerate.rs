//! Canonical enumerations over a finite field.

use crate::field::{Field, FieldElem};
use crate::poly::{Poly, Ring};

/// Nonzero vectors of length `m` up to scalars, normalized so the first
/// nonzero coordinate is 1. Ordered by position of that coordinate, then by
/// the canonical order of the remaining coordinates (last one fastest).
pub fn projective_points(k: &Field, m: usize) -> Vec<Vec<FieldElem>> {
    let q = k.size().expect("finite field") as usize;
    let elems: Vec<FieldElem> = (0..q as u128).map(|i| k.element_at(i)).collect();
    let mut out = Vec::new();
    for lead in 0..m {
        let free = m - lead - 1;
        let mut digits = vec![0usize; free];
        loop {
            let mut v = vec![k.zero(); m];
            v[lead] = k.one();
            for (t, &dg) in digits.iter().enumerate() {
                v[lead + 1 + t] = elems[dg].clone();
            }
            out.push(v);
            if !odometer(&mut digits, q) {
                break;
            }
        }
    }
    out
}

/// Advances base-`q` digits, last fastest; false after the final value.
fn odometer(digits: &mut [usize], q: usize) -> bool {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < q {
            return true;
        }
        digits[i] = 0;
    }
    false
}

/// Homogeneous forms of degree `a` up to scalars.
pub fn forms_of_degree(ring: &Ring, a: u32) -> Vec<Poly> {
    let mons = ring.monomials_of_degree(a);
    projective_points(ring.field(), mons.len())
        .into_iter()
        .map(|v| Poly::from_terms(ring, mons.iter().cloned().zip(v)))
        .collect()
}

/// A subspace of linear forms in reduced row echelon form: `forms[j]` has
/// coefficient 1 on `x_{pivots[j]}` and 0 on every other pivot variable.
#[derive(Clone, Debug)]
pub struct LinearSpace {
    pub pivots: Vec<usize>,
    pub forms: Vec<Poly>,
}

/// All `s`-dimensional subspaces of the linear forms, each once.
pub fn linear_subspaces(ring: &Ring, s: usize) -> Vec<LinearSpace> {
    let n = ring.nvars();
    let k = ring.field();
    let q = k.size().expect("finite field") as usize;
    let elems: Vec<FieldElem> = (0..q as u128).map(|i| k.element_at(i)).collect();
    let mut out = Vec::new();
    if s > n {
        return out;
    }
    let mut pivots: Vec<usize> = (0..s).collect();
    loop {
        // free slots: (row, column) with column after the row's pivot and not a pivot
        let slots: Vec<(usize, usize)> = (0..s)
            .flat_map(|j| ((pivots[j] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (j, c)))
            .collect();
        let mut digits = vec![0usize; slots.len()];
        loop {
            let forms = (0..s)
                .map(|j| {
                    let mut f = Poly::var(ring, pivots[j]);
                    for (&(row, c), &dg) in slots.iter().zip(&digits) {
                        if row == j && dg != 0 {
                            f = &f + &Poly::var(ring, c).scale(&elems[dg]);
                        }
                    }
                    f
                })
                .collect();
            out.push(LinearSpace { pivots: pivots.clone(), forms });
            if !odometer(&mut digits, q) {
                break;
            }
        }
        // next pivot set
        let mut i = s;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] < n - s + i {
                pivots[i] += 1;
                for j in i + 1..s {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}
