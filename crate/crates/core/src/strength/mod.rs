//! Strength of homogeneous forms: certificates, bounds, an exhaustive
//! oracle over finite fields, and collective strength of tuples.
//!
//! The oracle uses that `f` has strength `≤ k` exactly when `f` lies in an
//! ideal generated by `k + 1` forms of degree at most `deg f / 2`. For
//! `deg f ≤ 3` those forms are linear, so only linear subspaces need to be
//! enumerated; membership is then a substitution.

mod enumerate;
mod quadric;

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::linalg;
use crate::poly::{GradedHom, HomDegree, Monomial, Poly, PolyJson};

pub use enumerate::{forms_of_degree, linear_subspaces, projective_points};
pub use quadric::{gram_rank, quadric_bounds};

/// `k ≥ −1`, or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StrengthValue {
    Finite(i64),
    Infinity,
}

impl StrengthValue {
    pub fn finite(self) -> Option<i64> {
        match self {
            StrengthValue::Finite(k) => Some(k),
            StrengthValue::Infinity => None,
        }
    }
}

impl fmt::Display for StrengthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrengthValue::Finite(k) => write!(f, "{k}"),
            StrengthValue::Infinity => f.write_str("infinite"),
        }
    }
}

impl Serialize for StrengthValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            StrengthValue::Finite(k) => s.serialize_i64(*k),
            StrengthValue::Infinity => s.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for StrengthValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(k) => Ok(StrengthValue::Finite(k)),
            Raw::Str(s) if s == "infinity" => Ok(StrengthValue::Infinity),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad strength value {s}"))),
        }
    }
}

/// `f = Σ g_i h_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StrengthCertificate {
    pub pairs: Vec<(Poly, Poly)>,
}

impl StrengthCertificate {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The strength bound this certificate witnesses.
    pub fn bound(&self) -> i64 {
        self.pairs.len() as i64 - 1
    }

    pub fn to_json(&self) -> Vec<[PolyJson; 2]> {
        self.pairs.iter().map(|(g, h)| [g.to_json(), h.to_json()]).collect()
    }

    fn scaled(&self, c: &FieldElem) -> StrengthCertificate {
        StrengthCertificate { pairs: self.pairs.iter().map(|(g, h)| (g.clone(), h.scale(c))).collect() }
    }
}

/// Bounds on strength; `certificate` witnesses `upper` when present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrengthBounds {
    pub lower: i64,
    pub upper: StrengthValue,
    pub exact: bool,
    pub certificate: Option<StrengthCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrengthResult {
    pub value: StrengthValue,
    /// Present for finite values.
    pub certificate: Option<StrengthCertificate>,
}

fn positive_degree(p: &Poly) -> Option<u32> {
    match p.homogeneous_degree() {
        HomDegree::Homogeneous(d) if d > 0 => Some(d),
        _ => None,
    }
}

/// True iff `Σ g_i h_i = f` with every factor homogeneous of positive degree
/// and `deg g_i + deg h_i = deg f`.
pub fn verify_certificate(f: &Poly, cert: &StrengthCertificate) -> Result<bool> {
    let ring = f.ring();
    if cert.pairs.iter().any(|(g, h)| g.ring() != ring || h.ring() != ring) {
        return Err(Error::RingMismatch);
    }
    let df = match f.homogeneous_degree() {
        HomDegree::NotHomogeneous => return Err(Error::NotHomogeneous),
        HomDegree::ZeroPoly => None,
        HomDegree::Homogeneous(d) => Some(d),
    };
    let mut sum = Poly::zero(ring);
    for (g, h) in &cert.pairs {
        let (Some(a), Some(b)) = (positive_degree(g), positive_degree(h)) else {
            return Ok(false);
        };
        if df.is_some_and(|d| a + b != d) {
            return Ok(false);
        }
        sum = &sum + &(g * h);
    }
    Ok(sum == *f)
}

/// `f = Σ_j x_j h_j`, grouping each term under the least variable dividing
/// it; at most `n` pairs.
pub fn strength_upper_split(f: &Poly) -> Result<StrengthCertificate> {
    if f.is_zero() {
        return Ok(StrengthCertificate::default());
    }
    let d = f.degree()?;
    if d <= 1 {
        return Err(Error::DegreeTooLow("splitting needs degree at least 2".into()));
    }
    let ring = f.ring();
    if !ring.is_standard_graded() {
        return Err(Error::NotApplicable("splitting needs every variable in degree 1".into()));
    }
    let n = ring.nvars();
    let mut groups: Vec<Vec<(Monomial, FieldElem)>> = vec![Vec::new(); n];
    for (m, c) in f.terms() {
        let j = m.support().next().expect("positive degree");
        groups[j].push((m.div(&Monomial::var(n, j)), c.clone()));
    }
    let pairs = groups
        .into_iter()
        .enumerate()
        .filter(|(_, g)| !g.is_empty())
        .map(|(j, g)| (Poly::var(ring, j), Poly::from_terms(ring, g)))
        .collect();
    Ok(StrengthCertificate { pairs })
}

/// Cofactors `h_i` of degree `deg f − deg g_i` with `Σ g_i h_i = f`.
pub(crate) fn solve_cofactors(f: &Poly, gs: &[Poly]) -> Result<Option<Vec<Poly>>> {
    let ring = f.ring();
    let k = ring.field();
    let d = f.degree()?;
    let basis = ring.monomials_of_degree(d);
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut cols = Vec::new();
    let mut owners = Vec::new();
    for (i, g) in gs.iter().enumerate() {
        let a = g.degree()?;
        if a > d {
            continue;
        }
        for m in ring.monomials_of_degree(d - a) {
            let mut col = vec![k.zero(); basis.len()];
            for (t, c) in g.terms() {
                col[index[&t.mul(&m)]] = c.clone();
            }
            cols.push(col);
            owners.push((i, m));
        }
    }
    let rhs: Vec<FieldElem> = basis.iter().map(|m| f.coeff(m)).collect();
    let Some(x) = linalg::solve(k, &cols, &rhs) else { return Ok(None) };
    let mut hs = vec![Poly::zero(ring); gs.len()];
    for ((i, m), c) in owners.into_iter().zip(x) {
        if !k.is_zero(&c) {
            hs[i] = &hs[i] + &Poly::monomial(ring, m, c);
        }
    }
    Ok(Some(hs))
}

fn certificate_from(f: &Poly, gs: Vec<Poly>) -> Result<StrengthCertificate> {
    let hs = solve_cofactors(f, &gs)?.ok_or_else(|| Error::Invariant("membership without cofactors".into()))?;
    Ok(StrengthCertificate { pairs: gs.into_iter().zip(hs).filter(|(_, h)| !h.is_zero()).collect() })
}

/// Exhaustive strength computation over a finite field, with a memo of
/// results per monic form.
#[derive(Debug)]
pub struct StrengthOracle {
    max_tests: u64,
    cache: Mutex<HashMap<Poly, StrengthResult>>,
}

impl Default for StrengthOracle {
    fn default() -> Self {
        StrengthOracle::new(2_000_000)
    }
}

impl StrengthOracle {
    /// `max_tests` caps the number of candidate generator tuples examined
    /// per form.
    pub fn new(max_tests: u64) -> Self {
        StrengthOracle { max_tests, cache: Mutex::new(HashMap::new()) }
    }

    pub fn strength(&self, f: &Poly) -> Result<StrengthResult> {
        if f.is_zero() {
            return Ok(StrengthResult { value: StrengthValue::Finite(-1), certificate: Some(StrengthCertificate::default()) });
        }
        let d = f.degree()?;
        if d == 0 {
            return Err(Error::DegreeTooLow("strength needs positive degree".into()));
        }
        if d == 1 {
            return Ok(StrengthResult { value: StrengthValue::Infinity, certificate: None });
        }
        if !f.field().is_finite() {
            return Err(Error::UnsupportedField("the strength oracle needs a finite field".into()));
        }
        let monic = f.monic();
        let lc = f.leading_term(&crate::poly::MonomialOrder::Grevlex).expect("nonzero").1.clone();
        if let Some(r) = self.cache.lock().expect("cache lock").get(&monic) {
            return Ok(rescale(r, &lc));
        }
        let r = self.compute(&monic, d)?;
        self.cache.lock().expect("cache lock").insert(monic, r.clone());
        Ok(rescale(&r, &lc))
    }

    fn compute(&self, f: &Poly, d: u32) -> Result<StrengthResult> {
        let split = strength_upper_split(f)?;
        let hi = split.bound();
        let mut tests = 0u64;
        for s in 1..=hi as usize {
            let found = if d <= 3 { self.search_linear(f, s, &mut tests) } else { self.search_general(f, d, s, &mut tests) };
            match found {
                Ok(Some(gs)) => {
                    let cert = certificate_from(f, gs)?;
                    return Ok(StrengthResult { value: StrengthValue::Finite(cert.bound()), certificate: Some(cert) });
                }
                Ok(None) => {}
                Err(Error::BudgetExceeded(_)) => {
                    return Err(Error::BudgetExceeded(format!("strength of {f} lies in [{}, {hi}]", s as i64 - 1)));
                }
                Err(e) => return Err(e),
            }
        }
        Ok(StrengthResult { value: StrengthValue::Finite(hi), certificate: Some(split) })
    }

    fn charge(&self, tests: &mut u64) -> Result<()> {
        *tests += 1;
        if *tests > self.max_tests {
            return Err(Error::BudgetExceeded(format!("more than {} candidate tuples", self.max_tests)));
        }
        Ok(())
    }

    /// An `s`-dimensional space of linear forms whose ideal contains `f`.
    fn search_linear(&self, f: &Poly, s: usize, tests: &mut u64) -> Result<Option<Vec<Poly>>> {
        let ring = f.ring();
        for space in linear_subspaces(ring, s) {
            self.charge(tests)?;
            // eliminate each pivot variable using its row
            let images: Vec<Poly> = (0..ring.nvars())
                .map(|i| match space.pivots.iter().position(|&p| p == i) {
                    Some(j) => &Poly::var(ring, i) - &space.forms[j],
                    None => Poly::var(ring, i),
                })
                .collect();
            let hom = GradedHom::new(ring, ring, images)?;
            if hom.apply(f)?.is_zero() {
                return Ok(Some(space.forms));
            }
        }
        Ok(None)
    }

    /// `s` forms of degrees in `1..=d/2` whose ideal contains `f`.
    fn search_general(&self, f: &Poly, d: u32, s: usize, tests: &mut u64) -> Result<Option<Vec<Poly>>> {
        let ring = f.ring();
        let mut cands = Vec::new();
        for a in 1..=d / 2 {
            cands.extend(forms_of_degree(ring, a));
        }
        let m = cands.len();
        if s > m {
            return Ok(None);
        }
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            self.charge(tests)?;
            let gs: Vec<Poly> = idx.iter().map(|&i| cands[i].clone()).collect();
            if solve_cofactors(f, &gs)?.is_some() {
                return Ok(Some(gs));
            }
            // next combination
            let mut i = s;
            loop {
                if i == 0 {
                    return Ok(None);
                }
                i -= 1;
                if idx[i] < m - s + i {
                    idx[i] += 1;
                    for j in i + 1..s {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

fn rescale(r: &StrengthResult, c: &FieldElem) -> StrengthResult {
    StrengthResult { value: r.value, certificate: r.certificate.as_ref().map(|cert| cert.scaled(c)) }
}

/// Exact strength over a finite field with the default budget.
pub fn strength_exact_small(f: &Poly) -> Result<StrengthResult> {
    StrengthOracle::default().strength(f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollectiveStrength {
    pub value: StrengthValue,
    /// Coefficients on the input forms (zero outside one degree class) and
    /// the combination they give; absent when the value is infinite.
    pub witness: Option<(Vec<FieldElem>, Poly)>,
}

/// Minimum strength over nonzero combinations supported on one degree class.
pub fn collective_strength(fs: &[Poly]) -> Result<CollectiveStrength> {
    collective_strength_with(fs, &StrengthOracle::default())
}

pub fn collective_strength_with(fs: &[Poly], oracle: &StrengthOracle) -> Result<CollectiveStrength> {
    let ring = fs.first().ok_or(Error::ZeroInput)?.ring();
    let k = ring.field();
    if !k.is_finite() {
        return Err(Error::UnsupportedField("collective strength needs a finite field".into()));
    }
    let mut classes: std::collections::BTreeMap<u32, Vec<usize>> = Default::default();
    for (i, f) in fs.iter().enumerate() {
        if f.ring() != ring {
            return Err(Error::RingMismatch);
        }
        match f.homogeneous_degree() {
            HomDegree::NotHomogeneous => return Err(Error::NotHomogeneous),
            HomDegree::ZeroPoly => {
                let mut c = vec![k.zero(); fs.len()];
                c[i] = k.one();
                return Ok(CollectiveStrength { value: StrengthValue::Finite(-1), witness: Some((c, f.clone())) });
            }
            HomDegree::Homogeneous(d) => classes.entry(d).or_default().push(i),
        }
    }
    let combine = |members: &[usize], coeffs: &[FieldElem]| -> (Vec<FieldElem>, Poly) {
        let mut full = vec![k.zero(); fs.len()];
        let mut g = Poly::zero(ring);
        for (&i, c) in members.iter().zip(coeffs) {
            full[i] = c.clone();
            g = &g + &fs[i].scale(c);
        }
        (full, g)
    };
    // dependence first: the zero combination has strength −1
    for members in classes.values() {
        for coeffs in projective_points(k, members.len()) {
            let (full, g) = combine(members, &coeffs);
            if g.is_zero() {
                return Ok(CollectiveStrength { value: StrengthValue::Finite(-1), witness: Some((full, g)) });
            }
        }
    }
    let mut best = CollectiveStrength { value: StrengthValue::Infinity, witness: None };
    for (&d, members) in &classes {
        if d < 2 {
            continue;
        }
        for coeffs in projective_points(k, members.len()) {
            let (full, g) = combine(members, &coeffs);
            let r = oracle.strength(&g)?;
            if r.value < best.value {
                best = CollectiveStrength { value: r.value, witness: Some((full, g)) };
                if best.value == StrengthValue::Finite(0) {
                    return Ok(best);
                }
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests;
