//! Rank bounds for quadrics in characteristic other than 2.

use super::{StrengthBounds, StrengthCertificate, StrengthValue};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::linalg;
use crate::poly::{HomDegree, Monomial, Poly};

fn check_quadric(f: &Poly) -> Result<()> {
    if f.field().characteristic() == 2 {
        return Err(Error::CharTwo);
    }
    if !f.ring().is_standard_graded() {
        return Err(Error::NotApplicable("quadric bounds need every variable in degree 1".into()));
    }
    match f.homogeneous_degree() {
        HomDegree::Homogeneous(2) | HomDegree::ZeroPoly => Ok(()),
        _ => Err(Error::NotQuadric),
    }
}

fn pair_coeff(f: &Poly, i: usize, j: usize) -> FieldElem {
    let mut e = vec![0; f.ring().nvars()];
    e[i] += 1;
    e[j] += 1;
    f.coeff(&Monomial::new(e))
}

/// Rank of the symmetric Gram matrix of a quadric.
pub fn gram_rank(f: &Poly) -> Result<usize> {
    check_quadric(f)?;
    let k = f.field();
    let n = f.ring().nvars();
    let half = k.inv(&k.from_i64(2))?;
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { pair_coeff(f, i, i) } else { k.mul(&pair_coeff(f, i, j), &half) })
                .collect()
        })
        .collect();
    Ok(linalg::rank(k, rows))
}

/// `f = Σ c_i L_i²` with linearly independent `L_i`, by completing squares.
fn diagonalize(f: &Poly) -> Result<Vec<(FieldElem, Poly)>> {
    let ring = f.ring();
    let k = ring.field();
    let n = ring.nvars();
    let two = k.from_i64(2);
    let mut g = f.clone();
    let mut out = Vec::new();
    while !g.is_zero() {
        if let Some(i) = (0..n).find(|&i| !k.is_zero(&pair_coeff(&g, i, i))) {
            let a = pair_coeff(&g, i, i);
            let inv = k.inv(&k.mul(&two, &a))?;
            let mut l = Poly::var(ring, i);
            for j in (0..n).filter(|&j| j != i) {
                l = &l + &Poly::var(ring, j).scale(&k.mul(&pair_coeff(&g, i, j), &inv));
            }
            g = &g - &(&l * &l).scale(&a);
            out.push((a, l));
            continue;
        }
        let (i, j) = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !k.is_zero(&pair_coeff(&g, i, j)))
            .ok_or_else(|| Error::Invariant("nonzero quadric without terms".into()))?;
        let b = pair_coeff(&g, i, j);
        let binv = k.inv(&b)?;
        let mut p = Poly::var(ring, i);
        let mut q = Poly::var(ring, j);
        for c in (0..n).filter(|&c| c != i && c != j) {
            let xc = Poly::var(ring, c);
            p = &p + &xc.scale(&k.mul(&pair_coeff(&g, j, c), &binv));
            q = &q + &xc.scale(&k.mul(&pair_coeff(&g, i, c), &binv));
        }
        g = &g - &(&p * &q).scale(&b);
        let half = k.inv(&two)?;
        out.push((b.clone(), (&p + &q).scale(&half)));
        out.push((k.neg(&b), (&p - &q).scale(&half)));
    }
    Ok(out)
}

/// `⌈rank/2⌉ − 1 ≤ strength ≤ (products in a pairing of the diagonal form) − 1`.
pub fn quadric_bounds(f: &Poly) -> Result<StrengthBounds> {
    check_quadric(f)?;
    let k = f.field();
    let rank = gram_rank(f)?;
    let diag = diagonalize(f)?;
    if diag.len() != rank {
        return Err(Error::Invariant(format!("diagonal length {} differs from Gram rank {rank}", diag.len())));
    }
    let mut left: Vec<Option<(FieldElem, Poly)>> = diag.into_iter().map(Some).collect();
    let mut pairs = Vec::new();
    for a in 0..left.len() {
        let Some((ca, la)) = left[a].take() else { continue };
        // a partner b with -c_b / c_a a square splits c_a L_a² + c_b L_b² into one product
        let partner = (a + 1..left.len()).find_map(|b| {
            let (cb, _) = left[b].as_ref()?;
            let ratio = k.neg(&k.div(cb, &ca).ok()?);
            k.sqrt(&ratio).map(|s| (b, s))
        });
        match partner {
            Some((b, s)) => {
                let (_, lb) = left[b].take().expect("partner present");
                let sl = lb.scale(&s);
                pairs.push((&la - &sl, (&la + &sl).scale(&ca)));
            }
            None => pairs.push((la.clone(), la.scale(&ca))),
        }
    }
    let cert = StrengthCertificate { pairs };
    let lower = (rank as i64 + 1) / 2 - 1;
    let upper = cert.bound();
    Ok(StrengthBounds { lower, upper: StrengthValue::Finite(upper), exact: lower == upper, certificate: Some(cert) })
}
