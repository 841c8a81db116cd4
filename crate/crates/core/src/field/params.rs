//! Polynomials in the parameters `t_1..t_m` over a base field.
//!
//! These are the numerators and denominators of rational-function
//! coefficients, and the defining polynomials of distinguished opens.
//! Exponent vectors are ordered lexicographically; the last key of the map
//! is the lex-leading term.

use std::collections::BTreeMap;

use super::{Field, FieldElem};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, FieldElem>,
}

impl ParamPoly {
    pub fn zero(nvars: usize) -> Self {
        ParamPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(base: &Field, nvars: usize, c: FieldElem) -> Self {
        let mut p = Self::zero(nvars);
        if !base.is_zero(&c) {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(base: &Field, nvars: usize) -> Self {
        Self::constant(base, nvars, base.one())
    }

    pub fn var(base: &Field, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, base.one());
        p
    }

    pub fn from_terms(base: &Field, nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, FieldElem)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            debug_assert_eq!(e.len(), nvars);
            p.add_term(base, e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &FieldElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_value(&self, base: &Field) -> Option<FieldElem> {
        if self.is_zero() {
            return Some(base.zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn lead(&self) -> Option<(&Vec<u32>, &FieldElem)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn deg_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    fn add_term(&mut self, base: &Field, e: Vec<u32>, c: FieldElem) {
        if base.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = base.add(old, &c);
                if base.is_zero(&s) {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, base: &Field, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(base, e.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self, base: &Field) -> Self {
        ParamPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), base.neg(c))).collect(),
        }
    }

    pub fn sub(&self, base: &Field, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(base, e.clone(), base.neg(c));
        }
        r
    }

    pub fn scale(&self, base: &Field, c: &FieldElem) -> Self {
        if base.is_zero(c) {
            return Self::zero(self.nvars);
        }
        ParamPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), base.mul(a, c))).collect(),
        }
    }

    pub fn mul(&self, base: &Field, other: &Self) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(base, e, base.mul(c1, c2));
            }
        }
        r
    }

    pub fn pow(&self, base: &Field, mut k: u32) -> Self {
        let mut acc = Self::one(base, self.nvars);
        let mut sq = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(base, &sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(base, &sq);
            }
        }
        acc
    }

    fn mul_monomial(&self, base: &Field, e: &[u32], c: &FieldElem) -> Self {
        ParamPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(x, a)| (x.iter().zip(e).map(|(p, q)| p + q).collect(), base.mul(a, c)))
                .collect(),
        }
    }

    /// Divides by the lex-leading coefficient. Returns the monic polynomial
    /// and the coefficient divided out.
    pub fn monic(&self, base: &Field) -> (Self, FieldElem) {
        match self.lead() {
            None => (self.clone(), base.one()),
            Some((_, lc)) => {
                let lc = lc.clone();
                let inv = base.inv(&lc).expect("nonzero leading coefficient");
                (self.scale(base, &inv), lc)
            }
        }
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, base: &Field, divisor: &Self) -> Option<Self> {
        let (le, lc) = divisor.lead()?;
        let lc_inv = base.inv(lc).ok()?;
        let mut rem = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((e, c)) = rem.lead() {
            if !e.iter().zip(le).all(|(a, b)| a >= b) {
                return None;
            }
            let shift: Vec<u32> = e.iter().zip(le).map(|(a, b)| a - b).collect();
            let coef = base.mul(c, &lc_inv);
            rem = rem.sub(base, &divisor.mul_monomial(base, &shift, &coef));
            q.add_term(base, shift, coef);
        }
        Some(q)
    }

    /// Coefficients with respect to variable `v`, lowest power first.
    fn coeffs_in(&self, v: usize) -> Vec<Self> {
        let d = self.deg_in(v) as usize;
        let mut out = vec![Self::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[v] as usize;
            e2[v] = 0;
            out[k].terms.insert(e2, c.clone());
        }
        out
    }

    fn content_in(&self, base: &Field, v: usize) -> Self {
        let mut g = Self::zero(self.nvars);
        for c in self.coeffs_in(v) {
            g = gcd(base, &g, &c);
            if g.is_constant() && !g.is_zero() {
                break;
            }
        }
        g
    }

    fn lowest_var(&self) -> Option<usize> {
        (0..self.nvars).find(|&v| self.deg_in(v) > 0)
    }

    pub fn eval<F>(&self, target: &Field, point: &[FieldElem], embed: F) -> FieldElem
    where
        F: Fn(&FieldElem) -> FieldElem,
    {
        let mut acc = target.zero();
        for (e, c) in &self.terms {
            let mut t = embed(c);
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = target.mul(&t, &target.pow(x, k as u64));
                }
            }
            acc = target.add(&acc, &t);
        }
        acc
    }

    pub fn format(&self, base: &Field, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(k, _)| **k > 0)
                .map(|(k, n)| if *k == 1 { n.clone() } else { format!("{n}^{k}") })
                .collect();
            let cs = base.format(c);
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            let body = if mono.is_empty() {
                mag
            } else if mag == "1" {
                mono.join("*")
            } else {
                format!("{mag}*{}", mono.join("*"))
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            out.push_str(&body);
        }
        out
    }
}

fn prem(base: &Field, a: &ParamPoly, b: &ParamPoly, v: usize) -> ParamPoly {
    let db = b.deg_in(v);
    let lcb = b.coeffs_in(v).pop().expect("nonzero divisor");
    let mut r = a.clone();
    while !r.is_zero() && r.deg_in(v) >= db {
        let dr = r.deg_in(v);
        let lcr = r.coeffs_in(v).pop().expect("nonzero");
        let mut shift = vec![0; a.nvars];
        shift[v] = dr - db;
        let t = b.mul(base, &lcr).mul_monomial(base, &shift, &base.one());
        r = r.mul(base, &lcb).sub(base, &t);
    }
    r
}

fn primitive_part(base: &Field, a: &ParamPoly, v: usize) -> ParamPoly {
    let c = a.content_in(base, v);
    a.div_exact(base, &c).expect("content divides")
}

/// Monic greatest common divisor (zero only when both inputs are zero).
pub fn gcd(base: &Field, a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    if a.is_zero() {
        return b.monic(base).0;
    }
    if b.is_zero() {
        return a.monic(base).0;
    }
    let n = a.nvars;
    if a.is_constant() || b.is_constant() {
        return ParamPoly::one(base, n);
    }
    let v = match (a.lowest_var(), b.lowest_var()) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => return ParamPoly::one(base, n),
    };
    if a.deg_in(v) == 0 {
        return gcd(base, a, &b.content_in(base, v));
    }
    if b.deg_in(v) == 0 {
        return gcd(base, &a.content_in(base, v), b);
    }
    let ca = a.content_in(base, v);
    let cb = b.content_in(base, v);
    let c = gcd(base, &ca, &cb);
    let mut p = a.div_exact(base, &ca).expect("content divides");
    let mut q = b.div_exact(base, &cb).expect("content divides");
    if p.deg_in(v) < q.deg_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = prem(base, &p, &q, v);
        if r.is_zero() {
            break;
        }
        if r.deg_in(v) == 0 {
            q = ParamPoly::one(base, n);
            break;
        }
        p = q;
        q = primitive_part(base, &r, v);
    }
    let g = if q.deg_in(v) == 0 { ParamPoly::one(base, n) } else { primitive_part(base, &q, v) };
    c.mul(base, &g).monic(base).0
}

pub fn lcm(base: &Field, a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    if a.is_zero() || b.is_zero() {
        return ParamPoly::zero(a.nvars);
    }
    let g = gcd(base, a, b);
    a.mul(base, b).div_exact(base, &g).expect("gcd divides").monic(base).0
}

/// Reduced fraction `num / den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    pub num: ParamPoly,
    pub den: ParamPoly,
}

impl RatFun {
    pub fn new(base: &Field, num: ParamPoly, den: ParamPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let n = num.nvars;
        if num.is_zero() {
            return RatFun { num, den: ParamPoly::one(base, n) };
        }
        let g = gcd(base, &num, &den);
        let num = num.div_exact(base, &g).expect("gcd divides");
        let den = den.div_exact(base, &g).expect("gcd divides");
        let (den, lc) = den.monic(base);
        let inv = base.inv(&lc).expect("nonzero");
        RatFun { num: num.scale(base, &inv), den }
    }

    pub fn from_poly(base: &Field, num: ParamPoly) -> Self {
        let n = num.nvars;
        RatFun { num, den: ParamPoly::one(base, n) }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }
}
