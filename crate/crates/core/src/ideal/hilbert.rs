//! Hilbert series numerators and dimension of monomial quotients.

use serde::{Deserialize, Serialize};

use crate::poly::{Monomial, RingCtx};

/// Hilbert series data of `R/I`: the series is
/// `numerator(t) / Π (1 - t^deg x_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub numerator: Vec<i64>,
    pub dimension: usize,
    pub codimension: usize,
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub(crate) fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

pub(crate) fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// `t^shift * p`.
pub(crate) fn poly_shift(p: &[i64], shift: u32) -> Vec<i64> {
    if p.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; shift as usize];
    out.extend_from_slice(p);
    out
}

fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut v: Vec<Monomial> = gens.to_vec();
    v.sort_by_key(|m| m.total());
    v.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in v {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Numerator of the Hilbert series of `R/(gens)` for a monomial ideal.
pub fn hilbert_numerator(ring: &RingCtx, gens: &[Monomial]) -> Vec<i64> {
    let gens = minimalize(gens);
    numerator_rec(ring, gens)
}

fn numerator_rec(ring: &RingCtx, gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return Vec::new();
    }
    // pairwise coprime generators: product formula
    let coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        return gens.iter().fold(vec![1], |acc, m| {
            let mut f = vec![0; ring.degree(m) as usize + 1];
            f[0] = 1;
            *f.last_mut().expect("nonempty") -= 1;
            poly_mul(&acc, &f)
        });
    }
    // pivot on the variable occurring in most generators with more than one variable
    let n = ring.nvars();
    let mixed: Vec<&Monomial> = gens.iter().filter(|m| m.support().count() > 1).collect();
    let var = (0..n)
        .max_by_key(|&i| (mixed.iter().filter(|m| m.exps()[i] > 0).count(), std::cmp::Reverse(i)))
        .expect("nonempty ring");
    let e = mixed.iter().map(|m| m.exps()[var]).filter(|&e| e > 0).min().expect("pivot occurs");
    let p = {
        let mut x = vec![0; n];
        x[var] = e;
        Monomial::new(x)
    };
    let mut plus = gens.clone();
    plus.push(p.clone());
    let colon: Vec<Monomial> = gens.iter().map(|m| m.div(&m.gcd(&p))).collect();
    let a = numerator_rec(ring, minimalize(&plus));
    let b = numerator_rec(ring, minimalize(&colon));
    poly_add(&a, &poly_shift(&b, ring.degree(&p)))
}

/// Multiplicity of `t = 1` as a root of `p` (`p` nonzero).
pub fn order_at_one(p: &[i64]) -> usize {
    let mut p = p.to_vec();
    let mut k = 0;
    while !p.is_empty() && p.iter().sum::<i64>() == 0 {
        // divide by (1 - t): q_i = sum_{j <= i} p_j
        let mut q = Vec::with_capacity(p.len() - 1);
        let mut acc = 0;
        for x in &p[..p.len() - 1] {
            acc += x;
            q.push(acc);
        }
        p = trim(q);
        k += 1;
    }
    k
}

/// Largest set of variables containing the support of no leading monomial.
pub fn max_independent_set(n: usize, lead: &[Monomial]) -> usize {
    let supports: Vec<u64> = lead
        .iter()
        .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
        .collect();
    if supports.contains(&0) {
        return 0;
    }
    fn rec(i: usize, n: usize, set: u64, size: usize, supports: &[u64], best: &mut usize) {
        if size + (n - i) <= *best {
            return;
        }
        if i == n {
            *best = size;
            return;
        }
        let with = set | (1 << i);
        if !supports.iter().any(|s| s & !with == 0) {
            rec(i + 1, n, with, size + 1, supports, best);
        }
        rec(i + 1, n, set, size, supports, best);
    }
    let mut best = 0;
    rec(0, n, 0, 0, &supports, &mut best);
    best
}

/// Coefficients of `numerator / Π(1 - t^{d_i})` up to `t^upto`.
pub fn series_expansion(ring: &RingCtx, numerator: &[i64], upto: usize) -> Vec<i64> {
    let mut s = vec![0i64; upto + 1];
    for (i, &c) in numerator.iter().enumerate().take(upto + 1) {
        s[i] = c;
    }
    for v in 0..ring.nvars() {
        let d = ring.var_degree(v) as usize;
        // multiply by 1/(1 - t^d)
        for i in d..=upto {
            s[i] += s[i - d];
        }
    }
    s
}
