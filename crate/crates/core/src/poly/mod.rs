//! Sparse multivariate polynomials over a weighted-graded ring.

mod hom;
mod json;
mod order;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

pub use hom::{monicize, GradedHom, Monicization};
pub use json::{polys_from_json, PolyJson, TermJson, VarJson};
pub use order::MonomialOrder;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Var {
    pub name: String,
    pub degree: u32,
}

/// Coefficient field plus an ordered list of weighted variables.
#[derive(Debug, PartialEq, Eq)]
pub struct RingCtx {
    field: Field,
    vars: Vec<Var>,
}

pub type Ring = Arc<RingCtx>;

impl RingCtx {
    pub fn new(field: Field, vars: Vec<Var>) -> Result<Ring> {
        let mut seen = std::collections::HashSet::new();
        for v in &vars {
            if v.degree == 0 {
                return Err(Error::Parse(format!("variable {} must have positive degree", v.name)));
            }
            if !seen.insert(v.name.as_str()) || field.param_names().contains(&v.name) {
                return Err(Error::Parse(format!("duplicate name {}", v.name)));
            }
        }
        Ok(Arc::new(RingCtx { field, vars }))
    }

    /// `k[x1..xn]` with the standard grading.
    pub fn standard(field: &Field, n: usize) -> Ring {
        Self::weighted(field, &vec![1; n])
    }

    /// `k[x1..xn]` with `deg xi = degrees[i]`.
    pub fn weighted(field: &Field, degrees: &[u32]) -> Ring {
        let vars = degrees.iter().enumerate().map(|(i, &d)| Var { name: format!("x{}", i + 1), degree: d }).collect();
        RingCtx::new(field.clone(), vars).expect("generated names are unique")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_degree(&self, i: usize) -> u32 {
        self.vars[i].degree
    }

    pub fn is_standard_graded(&self) -> bool {
        self.vars.iter().all(|v| v.degree == 1)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.vars).map(|(e, v)| e * v.degree).sum()
    }

    /// The subring on the first `n` variables.
    pub fn truncated(&self, n: usize) -> Ring {
        let n = n.min(self.vars.len());
        Arc::new(RingCtx { field: self.field.clone(), vars: self.vars[..n].to_vec() })
    }

    /// Same variables over another coefficient field.
    pub fn with_field(&self, field: &Field) -> Ring {
        Arc::new(RingCtx { field: field.clone(), vars: self.vars.clone() })
    }

    /// This ring with extra variables appended.
    pub fn extended(&self, extra: &[Var]) -> Result<Ring> {
        let mut vars = self.vars.clone();
        vars.extend_from_slice(extra);
        RingCtx::new(self.field.clone(), vars)
    }

    /// All monomials of weighted degree `d`, in descending grevlex order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let n = self.vars.len();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(ring: &RingCtx, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == ring.vars.len() {
                if left == 0 {
                    out.push(Monomial::new(cur.clone()));
                }
                return;
            }
            let w = ring.vars[i].degree;
            for e in 0..=left / w {
                cur[i] = e;
                rec(ring, i + 1, left - e * w, cur, out);
            }
            cur[i] = 0;
        }
        if n == 0 {
            if d == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(self, 0, d, &mut cur, &mut out);
        out.sort_by(|a, b| MonomialOrder::Grevlex.compare(self, b, a));
        out
    }
}

/// Exponent vector, one entry per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n].into_boxed_slice())
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial::new(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }
}

/// Marker result of [`Poly::homogeneous_degree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomDegree {
    Homogeneous(u32),
    NotHomogeneous,
    ZeroPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Polynomial with nonzero coefficients keyed by monomial.
#[derive(Clone, Debug)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Poly {
    pub fn zero(ring: &Ring) -> Poly {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Ring, c: FieldElem) -> Poly {
        Poly::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Ring) -> Poly {
        Poly::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Ring, i: usize) -> Poly {
        Poly::monomial(ring, Monomial::var(ring.nvars(), i), ring.field().one())
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: FieldElem) -> Poly {
        let mut p = Poly::zero(ring);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, FieldElem)>) -> Poly {
        let mut p = Poly::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.len(), ring.nvars(), "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    /// Parses `x1^2 - 3*x1*x2 + (t+1)*x3` style input in `ring`.
    pub fn parse(ring: &Ring, s: &str) -> Result<Poly> {
        parse::parse_poly(ring, s)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field().zero())
    }

    /// Terms sorted by a monomial order, largest first.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &FieldElem)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.compare(&self.ring, b.0, a.0));
        v
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &FieldElem)> {
        self.terms.iter().max_by(|a, b| order.compare(&self.ring, a.0, b.0))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: FieldElem) {
        let k = self.ring.field();
        if k.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = k.add(old, &c);
                if k.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn arith(&self, other: &Poly, op: PolyOp) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(match op {
            PolyOp::Add => self.add_unchecked(other),
            PolyOp::Sub => self.add_unchecked(&other.neg()),
            PolyOp::Mul => self.mul_unchecked(other),
        })
    }

    fn add_unchecked(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        let k = self.ring.field();
        let mut r = Poly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.add_term(m1.mul(m2), k.mul(c1, c2));
            }
        }
        r
    }

    pub fn neg(&self) -> Poly {
        let k = self.ring.field();
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), k.neg(c))).collect() }
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        let k = self.ring.field();
        if k.is_zero(c) {
            return Poly::zero(&self.ring);
        }
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), k.mul(a, c))).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &FieldElem) -> Poly {
        let k = self.ring.field();
        if k.is_zero(c) {
            return Poly::zero(&self.ring);
        }
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(x, a)| (x.mul(m), k.mul(a, c))).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    pub fn homogeneous_degree(&self) -> HomDegree {
        let mut it = self.terms.keys().map(|m| self.ring.degree(m));
        match it.next() {
            None => HomDegree::ZeroPoly,
            Some(d) => {
                if it.all(|e| e == d) {
                    HomDegree::Homogeneous(d)
                } else {
                    HomDegree::NotHomogeneous
                }
            }
        }
    }

    /// Weighted degree of a nonzero homogeneous polynomial.
    pub fn degree(&self) -> Result<u32> {
        match self.homogeneous_degree() {
            HomDegree::Homogeneous(d) => Ok(d),
            HomDegree::NotHomogeneous => Err(Error::NotHomogeneous),
            HomDegree::ZeroPoly => Err(Error::ZeroInput),
        }
    }

    /// Maximum weighted degree of a term; 0 for the zero polynomial.
    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|m| self.ring.degree(m)).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Scales so that the grevlex-leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading_term(&MonomialOrder::Grevlex) {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field().inv(c).expect("nonzero")),
        }
    }

    /// Re-homes the polynomial into `target`, which must have the same field
    /// and the same variable count.
    pub fn with_ring(&self, target: &Ring) -> Poly {
        assert_eq!(self.ring.nvars(), target.nvars());
        Poly { ring: target.clone(), terms: self.terms.clone() }
    }

    /// Embeds into a ring whose first variables are this ring's variables.
    pub fn embed(&self, target: &Ring) -> Poly {
        let n = target.nvars();
        assert!(n >= self.ring.nvars());
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.exps().to_vec();
            e.resize(n, 0);
            (Monomial::new(e), c.clone())
        });
        Poly { ring: target.clone(), terms: terms.collect() }
    }

    /// Places this polynomial's variables at positions `positions` of `target`.
    pub fn embed_at(&self, target: &Ring, positions: &[usize]) -> Poly {
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; n];
            for (i, &k) in m.exps().iter().enumerate() {
                e[positions[i]] += k;
            }
            (Monomial::new(e), c.clone())
        });
        Poly::from_terms(target, terms)
    }

    /// Kills variables beyond index `n`; the result lives in the subring on
    /// the first `n` variables.
    pub fn truncate_vars(&self, n: usize) -> Poly {
        let sub = self.ring.truncated(n);
        let n = sub.nvars();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exps()[n..].iter().all(|&e| e == 0))
            .map(|(m, c)| (Monomial::new(m.exps()[..n].to_vec()), c.clone()));
        Poly { ring: sub, terms: terms.collect() }
    }

    /// Maps coefficients through `f` into a polynomial over `target`.
    pub fn map_coeffs<F>(&self, target: &Ring, f: F) -> Result<Poly>
    where
        F: Fn(&FieldElem) -> Result<FieldElem>,
    {
        let mut p = Poly::zero(target);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), f(c)?);
        }
        Ok(p)
    }

    /// Variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().flat_map(|m| m.support().collect::<Vec<_>>()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.arith(rhs, PolyOp::Add).expect("ring mismatch")
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.arith(rhs, PolyOp::Sub).expect("ring mismatch")
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.arith(rhs, PolyOp::Mul).expect("ring mismatch")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let k = self.field();
        let mut first = true;
        for (m, c) in self.sorted_terms(&MonomialOrder::Grevlex) {
            let mono: Vec<String> = m
                .exps()
                .iter()
                .zip(self.ring.vars())
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.name.clone() } else { format!("{}^{}", v.name, e) })
                .collect();
            let mut cs = k.format(c);
            if k.frac_parts().is_some() && (cs.contains('+') || cs[1..].contains('-') || cs.contains('/')) {
                cs = format!("({cs})");
            }
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(r) => (true, r.to_string()),
                None => (false, cs),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if mono.is_empty() {
                f.write_str(&mag)?;
            } else if mag == "1" {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Knobs for random sampling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    /// Rational coefficients are drawn uniformly from `[-box, box]`.
    pub rational_box: i64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { rational_box: 5 }
    }
}

/// Random homogeneous form of weighted degree `d`, deterministic in `seed`.
pub fn random_homogeneous(ring: &Ring, d: u32, seed: u64) -> Result<Poly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_homogeneous_with(ring, d, &mut rng, SampleConfig::default())
}

pub fn random_homogeneous_with<R: Rng>(ring: &Ring, d: u32, rng: &mut R, cfg: SampleConfig) -> Result<Poly> {
    let k = ring.field();
    if k.frac_parts().is_some() {
        return Err(Error::UnsupportedField("random sampling over rational function fields".into()));
    }
    let mut p = Poly::zero(ring);
    for m in ring.monomials_of_degree(d) {
        let c = random_elem(k, rng, cfg);
        p.add_term(m, c);
    }
    Ok(p)
}

pub(crate) fn random_elem<R: Rng>(k: &Field, rng: &mut R, cfg: SampleConfig) -> FieldElem {
    match k.size() {
        Some(q) => k.element_at(rng.gen_range(0..q)),
        None => k.from_i64(rng.gen_range(-cfg.rational_box..=cfg.rational_box)),
    }
}

#[cfg(test)]
mod tests;
