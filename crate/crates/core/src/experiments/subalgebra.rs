use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{poly_strings, ExperimentReport, Limits, Mode, ReportParams, TupleSpace};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::{is_regular_sequence_with, RegSeqMethod, Subalgebra};
use crate::poly::Poly;
use crate::resolution::{projective_dimension, GradedMap};
use crate::strength::{collective_strength_with, StrengthOracle, StrengthValue};

#[derive(Clone, Copy, Debug)]
pub struct SubalgebraConfig {
    pub limits: Limits,
    pub max_iterations: usize,
}

impl Default for SubalgebraConfig {
    fn default() -> Self {
        SubalgebraConfig { limits: Limits::default(), max_iterations: 1000 }
    }
}

/// One pass of the replacement loop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubalgebraStep {
    /// `"delete"` for a linear dependence, `"replace"` otherwise.
    pub action: &'static str,
    pub pivot: usize,
    pub combination: String,
    pub strength: StrengthValue,
    pub factors: Vec<String>,
    /// Exponent vector of the type monomial `y(d)` after the step:
    /// entry `e - 1` counts the forms of degree `e`.
    pub type_exponents: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SubalgebraResult {
    pub gs: Vec<Poly>,
    /// `fs[i]` as a polynomial in `Y1..Ys` (`Yj ↦ gs[j]`).
    pub expressions: Vec<Poly>,
    pub s: usize,
    pub trace: Vec<SubalgebraStep>,
}

fn type_exponents(fs: &[Poly]) -> Vec<usize> {
    let mut v = vec![];
    for f in fs {
        let d = f.degree().expect("homogeneous") as usize;
        if v.len() < d {
            v.resize(d, 0);
        }
        v[d - 1] += 1;
    }
    v
}

/// `a > b` in revlex: at the last differing variable, `a` has the smaller
/// exponent.
fn revlex_greater(a: &[usize], b: &[usize]) -> bool {
    let n = a.len().max(b.len());
    let at = |v: &[usize], i: usize| v.get(i).copied().unwrap_or(0);
    (0..n).rev().find(|&i| at(a, i) != at(b, i)).is_some_and(|i| at(a, i) < at(b, i))
}

/// Whether `after` has a strictly larger type monomial than `before`.
#[cfg(test)]
pub(super) fn type_increases(before: &[Poly], after: &[Poly]) -> bool {
    revlex_greater(&type_exponents(after), &type_exponents(before))
}

pub fn small_subalgebra(fs: &[Poly]) -> Result<SubalgebraResult> {
    small_subalgebra_with(fs, &StrengthOracle::default(), SubalgebraConfig::default())
}

/// A regular sequence `gs` with every `fs[i] ∈ k[gs]`, found by repeatedly
/// splitting a lowest-strength combination into its certificate factors.
pub fn small_subalgebra_with(fs: &[Poly], oracle: &StrengthOracle, cfg: SubalgebraConfig) -> Result<SubalgebraResult> {
    let budget = cfg.limits.budget;
    for f in fs {
        f.degree()?;
    }
    let mut cur: Vec<Poly> = fs.iter().filter(|f| !f.is_zero()).cloned().collect();
    let mut trace = vec![];
    let mut ty = type_exponents(&cur);
    while !cur.is_empty() && !is_regular_sequence_with(&cur, RegSeqMethod::Codim, budget)? {
        if trace.len() == cfg.max_iterations {
            return Err(Error::MaxIterations(trace.len()));
        }
        let cs = collective_strength_with(&cur, oracle)?;
        let (coeffs, combo) = match (&cs.value, cs.witness) {
            (StrengthValue::Finite(_), Some(w)) => w,
            _ => return Err(Error::Invariant("non-regular tuple without a finite-strength combination".into())),
        };
        let k = combo.field().clone();
        let pivot = (0..cur.len()).rev().find(|&i| !k.is_zero(&coeffs[i])).expect("nontrivial combination");
        let (action, factors) = if combo.is_zero() {
            cur.remove(pivot);
            ("delete", vec![])
        } else {
            let cert = oracle
                .strength(&combo)?
                .certificate
                .ok_or_else(|| Error::Invariant("finite strength without certificate".into()))?;
            let factors: Vec<Poly> = cert.pairs.iter().flat_map(|(g, h)| [g.clone(), h.clone()]).collect();
            cur.splice(pivot..=pivot, factors.iter().cloned());
            ("replace", factors)
        };
        let next = type_exponents(&cur);
        if !revlex_greater(&next, &ty) {
            return Err(Error::Invariant(format!("type monomial did not increase: {ty:?} -> {next:?}")));
        }
        ty = next;
        trace.push(SubalgebraStep {
            action,
            pivot,
            combination: combo.to_string(),
            strength: cs.value,
            factors: poly_strings(&factors),
            type_exponents: ty.clone(),
        });
    }
    // postconditions are re-checked rather than trusted from the loop
    if !cur.is_empty() && !is_regular_sequence_with(&cur, RegSeqMethod::Koszul, budget)? {
        return Err(Error::Invariant("final tuple is not a regular sequence".into()));
    }
    let expressions = if cur.is_empty() {
        vec![]
    } else {
        let sub = Subalgebra::with_budget(&cur, budget)?;
        fs.iter()
            .map(|f| sub.express(f)?.ok_or_else(|| Error::Invariant(format!("{f} is not in k[gs]"))))
            .collect::<Result<Vec<_>>>()?
    };
    Ok(SubalgebraResult { s: cur.len(), gs: cur, expressions, trace })
}

/// Samples tuples for each `n`, runs [`small_subalgebra_with`] and records
/// `s` next to the projective dimension of `R/(fs)`.
pub fn pd_experiment(
    degrees: &[u32],
    field: &Field,
    ns: &[usize],
    samples: usize,
    seed: u64,
    limits: Limits,
) -> Result<ExperimentReport> {
    let oracle = StrengthOracle::new(limits.strength_tests);
    let cfg = SubalgebraConfig { limits, ..Default::default() };
    let mut records = vec![];
    let mut per_n = BTreeMap::new();
    for &n in ns {
        let space = TupleSpace::new(field, n, degrees)?;
        let draws = space.draws(Mode::Sample { count: samples, seed: seed.wrapping_add(n as u64) }, limits.max_tuples)?;
        let rows: Vec<(usize, usize, Vec<String>, Vec<String>)> = draws
            .par_iter()
            .map(|(_, fs)| {
                let res = small_subalgebra_with(fs, &oracle, cfg)?;
                let pd = projective_dimension(&GradedMap::cyclic(space.ring(), fs)?)?;
                if pd > res.s {
                    return Err(Error::Invariant(format!("pd {pd} exceeds s = {}", res.s)));
                }
                Ok((pd, res.s, poly_strings(fs), poly_strings(&res.gs)))
            })
            .collect::<Result<_>>()?;
        let max_pd = rows.iter().map(|r| r.0).max().unwrap_or(0);
        let max_s = rows.iter().map(|r| r.1).max().unwrap_or(0);
        per_n.insert(n.to_string(), json!({"max_pd": max_pd, "max_s": max_s}));
        for (i, (pd, s, fs, gs)) in rows.into_iter().enumerate() {
            records.push(json!({"n": n, "sample": i, "tuple": fs.join(";"), "pd": pd, "s": s, "gs": gs.join(";")}));
        }
    }
    let summary = json!({"samples_per_n": samples, "pd_at_most_s": true, "per_n": per_n});
    let params = ReportParams {
        degrees: degrees.to_vec(),
        field: field.descriptor().clone(),
        n: ns.to_vec(),
        mode: Mode::Sample { count: samples, seed },
        limits,
    };
    Ok(ExperimentReport::new("pd-exp", params, summary, records))
}
