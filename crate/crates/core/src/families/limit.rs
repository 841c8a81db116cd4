use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::gb::Budget;
use crate::ideal::{is_regular_sequence_with, RegSeqMethod};
use crate::poly::{HomDegree, Monomial, Poly, RingCtx};

/// Coefficient pattern of a power-sum tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailWeight {
    /// `c · Σ x_i^d`
    Constant,
    /// `c · Σ i · x_i^d`
    Index,
}

/// `c · Σ_{i ≥ start} w_i x_i^d` with `w_i` given by `weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSumTail {
    pub c: FieldElem,
    pub d: u32,
    pub start: usize,
    pub weight: TailWeight,
}

/// An element of the inverse limit of `k[x1..xn]`, represented by finitely
/// many explicit terms in `x1..x_{n0}` and an optional power-sum tail.
#[derive(Clone, Debug)]
pub struct LimitElement {
    field: Field,
    head: Poly,
    tail: Option<PowerSumTail>,
}

impl LimitElement {
    /// `head` must live in the standard graded `k[x1..x_{n0}]`; the tail,
    /// if present, starts strictly after `x_{n0}`.
    pub fn new(field: &Field, head: Poly, tail: Option<PowerSumTail>) -> Result<LimitElement> {
        if head.field() != field || !head.ring().is_standard_graded() {
            return Err(Error::RingMismatch);
        }
        if let Some(t) = &tail {
            if !field.contains(&t.c) {
                return Err(Error::DescriptorMismatch);
            }
            if t.start == 0 || t.start <= head.ring().nvars() {
                return Err(Error::NotApplicable(format!(
                    "tail starts at x{} but the head uses {} variables",
                    t.start,
                    head.ring().nvars()
                )));
            }
            if t.d == 0 {
                return Err(Error::NotApplicable("tail degree must be positive".into()));
            }
        }
        let tail = tail.filter(|t| !field.is_zero(&t.c));
        match (head.homogeneous_degree(), &tail) {
            (HomDegree::NotHomogeneous, _) => return Err(Error::NotHomogeneous),
            (HomDegree::Homogeneous(a), Some(t)) if a != t.d => return Err(Error::NotHomogeneous),
            _ => {}
        }
        Ok(LimitElement { field: field.clone(), head, tail })
    }

    /// `c · Σ_{i ≥ 1} x_i^d`.
    pub fn power_sum(field: &Field, c: FieldElem, d: u32) -> Result<LimitElement> {
        let head = Poly::zero(&RingCtx::standard(field, 0));
        LimitElement::new(field, head, Some(PowerSumTail { c, d, start: 1, weight: TailWeight::Constant }))
    }

    /// A polynomial with no tail.
    pub fn polynomial(head: Poly) -> Result<LimitElement> {
        let field = head.field().clone();
        LimitElement::new(&field, head, None)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn head(&self) -> &Poly {
        &self.head
    }

    pub fn tail(&self) -> Option<&PowerSumTail> {
        self.tail.as_ref()
    }

    /// Degree as a formal element, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        match self.head.homogeneous_degree() {
            HomDegree::Homogeneous(d) => Some(d),
            _ => self.tail.as_ref().map(|t| t.d),
        }
    }

    pub fn truncate(&self, n: usize) -> Poly {
        truncate_limit(self, n)
    }
}

/// Image under `k[[x1, x2, ...]] → k[x1..xn]`.
pub fn truncate_limit(e: &LimitElement, n: usize) -> Poly {
    let ring = RingCtx::standard(&e.field, n);
    let n0 = e.head.ring().nvars();
    let mut out = if n >= n0 { e.head.embed(&ring) } else { e.head.truncate_vars(n).with_ring(&ring) };
    if let Some(t) = &e.tail {
        let k = &e.field;
        let terms = (t.start..=n).map(|i| {
            let mut exps = vec![0; n];
            exps[i - 1] = t.d;
            let c = match t.weight {
                TailWeight::Constant => t.c.clone(),
                TailWeight::Index => k.mul(&t.c, &k.from_i64(i as i64)),
            };
            (Monomial::new(exps), c)
        });
        out = &out + &Poly::from_terms(&ring, terms);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stabilization {
    /// Least `n` at which the truncations form a regular sequence.
    pub n: usize,
    /// `(n, regular)` for every scanned level.
    pub levels: Vec<(usize, bool)>,
}

pub fn regseq_stabilization(es: &[LimitElement], n_max: usize) -> Result<Stabilization> {
    regseq_stabilization_with(es, n_max, Budget::default())
}

/// Scans `n = 1..=n_max` and checks that regularity persists after the
/// first regular level.
pub fn regseq_stabilization_with(es: &[LimitElement], n_max: usize, budget: Budget) -> Result<Stabilization> {
    let mut levels = Vec::new();
    let mut first = None;
    for n in 1..=n_max {
        let fs: Vec<Poly> = es.iter().map(|e| truncate_limit(e, n)).collect();
        let regular = is_regular_sequence_with(&fs, RegSeqMethod::Codim, budget)?;
        levels.push((n, regular));
        match (first, regular) {
            (None, true) => first = Some(n),
            (Some(at), false) => return Err(Error::MonotonicityViolated { regular_at: at, failed_at: n }),
            _ => {}
        }
    }
    match first {
        Some(n) => Ok(Stabilization { n, levels }),
        None => Err(Error::NotFound(n_max)),
    }
}
