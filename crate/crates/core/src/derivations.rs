//! Partial and Hasse derivatives along a single coordinate direction,
//! witnesses for the "enough derivations" criteria, and p-th roots of
//! polynomials.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::poly::{Monomial, Poly};

fn check_index(f: &Poly, j: usize) -> Result<()> {
    if j >= f.ring().nvars() {
        Err(Error::IndexOutOfRange(j))
    } else {
        Ok(())
    }
}

/// Binomial coefficients `C(k, i)` in the field for `k <= max_k`, `i <= max_i`,
/// by Pascal's rule.
fn binomial_table(k: &Field, max_k: usize, max_i: usize) -> Vec<Vec<FieldElem>> {
    let mut rows: Vec<Vec<FieldElem>> = Vec::with_capacity(max_k + 1);
    for n in 0..=max_k {
        let mut row = vec![k.zero(); max_i + 1];
        row[0] = k.one();
        if n > 0 {
            let prev = &rows[n - 1];
            for i in 1..=max_i.min(n) {
                row[i] = k.add(&prev[i - 1], &prev[i]);
            }
        }
        rows.push(row);
    }
    rows
}

/// Ordinary partial derivative with respect to variable `j`.
pub fn partial(f: &Poly, j: usize) -> Result<Poly> {
    hasse(f, j, 1)
}

/// `n`-th Hasse derivative in direction `j`:
/// `c x_j^k m  ->  c C(k, n) x_j^(k-n) m`.
pub fn hasse(f: &Poly, j: usize, n: u32) -> Result<Poly> {
    check_index(f, j)?;
    if n == 0 {
        return Ok(f.clone());
    }
    let k = f.field();
    let max_k = f.terms().map(|(m, _)| m.exps()[j]).max().unwrap_or(0);
    if max_k < n {
        return Ok(Poly::zero(f.ring()));
    }
    let table = binomial_table(k, max_k as usize, n as usize);
    let terms = f.terms().filter(|(m, _)| m.exps()[j] >= n).map(|(m, c)| {
        let e = m.exps()[j];
        let mut exps = m.exps().to_vec();
        exps[j] = e - n;
        (Monomial::new(exps), k.mul(c, &table[e as usize][n as usize]))
    });
    Ok(Poly::from_terms(f.ring(), terms))
}

/// `[∂^0 f, ..., ∂^T f]`: the coefficients of `t^i` in `f(x_j + t)`.
pub fn hasse_series(f: &Poly, j: usize, order: u32) -> Result<Vec<Poly>> {
    check_index(f, j)?;
    let k = f.field();
    let max_k = f.terms().map(|(m, _)| m.exps()[j]).max().unwrap_or(0);
    let table = binomial_table(k, max_k as usize, order as usize);
    let mut out = vec![Poly::zero(f.ring()); order as usize + 1];
    for (m, c) in f.terms() {
        let e = m.exps()[j];
        for (i, slot) in out.iter_mut().enumerate().take((e.min(order) + 1) as usize) {
            let mut exps = m.exps().to_vec();
            exps[j] = e - i as u32;
            slot.add_term(Monomial::new(exps), k.mul(c, &table[e as usize][i]));
        }
    }
    Ok(out)
}

/// A direction certifying that `f` is not killed by first derivatives.
///
/// Returns the least `j` with `∂_j f != 0`. In characteristic `p` this is the
/// least variable occurring with an exponent not divisible by `p`; `None`
/// means every exponent is divisible by `p` (a p-th power candidate).
pub fn enough_witness(f: &Poly) -> Result<Option<usize>> {
    let d = f.degree()?;
    if d == 0 {
        return Err(Error::DegreeTooLow("witness search needs positive degree".into()));
    }
    let p = f.field().characteristic();
    Ok((0..f.ring().nvars()).find(|&j| {
        f.terms().any(|(m, _)| {
            let e = m.exps()[j] as u64;
            e > 0 && (p == 0 || e % p != 0)
        })
    }))
}

/// The `g` with `g^p = f`, over a perfect field of characteristic `p`.
pub fn pth_power_root(f: &Poly) -> Result<Poly> {
    let k = f.field();
    let p = k.characteristic();
    if p == 0 {
        return Err(Error::CharZero);
    }
    if !k.is_perfect() {
        return Err(Error::NotApplicable("p-th roots over imperfect coefficient fields".into()));
    }
    let mut terms = Vec::with_capacity(f.num_terms());
    for (m, c) in f.terms() {
        if m.exps().iter().any(|&e| e as u64 % p != 0) {
            return Err(Error::NotAPthPower);
        }
        let exps = m.exps().iter().map(|&e| (e as u64 / p) as u32).collect();
        terms.push((Monomial::new(exps), k.pth_root(c)?));
    }
    Ok(Poly::from_terms(f.ring(), terms))
}
