//! Experiment drivers: threshold search, small subalgebras, projective
//! dimension sampling and Betti censuses, all producing [`ExperimentReport`]s.

mod census;
mod subalgebra;
mod threshold;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor};
use crate::gb::Budget;
use crate::poly::{random_homogeneous_with, Monomial, Poly, Ring, RingCtx, SampleConfig};

pub use census::betti_census;
pub use subalgebra::{pd_experiment, small_subalgebra, small_subalgebra_with, SubalgebraConfig, SubalgebraResult, SubalgebraStep};
pub use threshold::threshold_search;

pub const TOOL_VERSION: &str = concat!("stillman ", env!("CARGO_PKG_VERSION"));

/// How tuples are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sample { count: usize, seed: u64 },
}

/// Shared knobs for the experiment drivers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub budget: Budget,
    /// Candidate tuples per strength computation.
    pub strength_tests: u64,
    /// Largest tuple space an exhaustive run may enumerate.
    pub max_tuples: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { budget: Budget::default(), strength_tests: 2_000_000, max_tuples: 5_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    pub degrees: Vec<u32>,
    pub field: FieldDescriptor,
    pub n: Vec<usize>,
    pub mode: Mode,
    pub limits: Limits,
}

/// Result of an experiment run. `records` and `summary` are deterministic
/// functions of `params`; `timing` is only filled on request.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub kind: String,
    pub version: String,
    pub params: ReportParams,
    pub conventions: Vec<String>,
    pub summary: Value,
    pub records: Vec<Value>,
    pub timing_seconds: Option<f64>,
}

impl ExperimentReport {
    fn new(kind: &str, params: ReportParams, summary: Value, records: Vec<Value>) -> Self {
        ExperimentReport {
            kind: kind.into(),
            version: TOOL_VERSION.into(),
            params,
            conventions: vec!["tuples range over nonzero forms only".into()],
            summary,
            records,
            timing_seconds: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per record; columns are the keys of the first record.
    pub fn to_csv(&self) -> String {
        let Some(Value::Object(first)) = self.records.first() else {
            return String::new();
        };
        let cols: Vec<&String> = first.keys().collect();
        let mut out = cols.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(",");
        out.push('\n');
        for r in &self.records {
            let row: Vec<String> = cols.iter().map(|c| csv_cell(r.get(c.as_str()).unwrap_or(&Value::Null))).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} ({})\n", self.kind, self.version);
        out.push_str(&format!(
            "degrees {:?}, field {}, n {:?}, mode {}\n",
            self.params.degrees,
            describe_field(&self.params.field),
            self.params.n,
            serde_json::to_string(&self.params.mode).expect("mode serializes")
        ));
        if let Value::Object(m) = &self.summary {
            for (k, v) in m {
                match v {
                    Value::String(s) if s.contains('\n') => out.push_str(&format!("{k}:\n{s}")),
                    _ => out.push_str(&format!("{k}: {v}\n")),
                }
            }
        }
        if let Some(t) = self.timing_seconds {
            out.push_str(&format!("time: {t:.3}s\n"));
        }
        out
    }
}

fn csv_cell(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    };
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

fn describe_field(d: &FieldDescriptor) -> String {
    match d {
        FieldDescriptor::Rationals => "QQ".into(),
        FieldDescriptor::PrimeField { p } => format!("F{p}"),
        FieldDescriptor::ExtField { p, e, .. } => format!("F{}", p.pow(*e as u32)),
        FieldDescriptor::RationalFunctions { .. } => format!("{d:?}"),
    }
}

/// Tuples of nonzero forms of fixed degrees over a finite field, indexed in
/// mixed radix with the first form varying slowest.
pub(crate) struct TupleSpace {
    ring: Ring,
    degrees: Vec<u32>,
    monomials: Vec<Vec<Monomial>>,
    q: u128,
}

impl TupleSpace {
    pub(crate) fn new(field: &Field, n: usize, degrees: &[u32]) -> Result<TupleSpace> {
        let q = field.size().ok_or_else(|| Error::UnsupportedField("experiments need a finite field".into()))?;
        if degrees.is_empty() || degrees.contains(&0) {
            return Err(Error::NotApplicable("degrees must be positive".into()));
        }
        let ring = RingCtx::standard(field, n);
        let monomials = degrees.iter().map(|&d| ring.monomials_of_degree(d)).collect();
        Ok(TupleSpace { ring, degrees: degrees.to_vec(), monomials, q })
    }

    pub(crate) fn ring(&self) -> &Ring {
        &self.ring
    }

    fn forms_per_slot(&self, i: usize) -> Option<u128> {
        self.q.checked_pow(self.monomials[i].len() as u32).map(|v| v - 1)
    }

    /// Number of tuples, `None` on overflow.
    pub(crate) fn size(&self) -> Option<u128> {
        (0..self.degrees.len()).try_fold(1u128, |acc, i| acc.checked_mul(self.forms_per_slot(i)?))
    }

    fn form(&self, slot: usize, index: u128) -> Poly {
        let k = self.ring.field();
        let ms = &self.monomials[slot];
        let mut x = index + 1;
        let mut digits = vec![0u128; ms.len()];
        for d in digits.iter_mut().rev() {
            *d = x % self.q;
            x /= self.q;
        }
        Poly::from_terms(&self.ring, ms.iter().zip(digits).map(|(m, d)| (m.clone(), k.element_at(d))))
    }

    pub(crate) fn tuple(&self, mut index: u128) -> Vec<Poly> {
        let mut out = vec![];
        for slot in (0..self.degrees.len()).rev() {
            let base = self.forms_per_slot(slot).expect("size checked");
            out.push(self.form(slot, index % base));
            index /= base;
        }
        out.reverse();
        out
    }

    /// Tuple ids and forms for the run: all of them, or `count` seeded draws.
    pub(crate) fn draws(&self, mode: Mode, max_tuples: u64) -> Result<Vec<(u128, Vec<Poly>)>> {
        match mode {
            Mode::Exhaustive => {
                let size = self.size().filter(|&s| s <= max_tuples as u128).ok_or_else(|| {
                    Error::BudgetExceeded(format!("tuple space exceeds the exhaustive limit of {max_tuples}"))
                })?;
                Ok((0..size).map(|i| (i, self.tuple(i))).collect())
            }
            Mode::Sample { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut out = Vec::with_capacity(count);
                for i in 0..count {
                    let mut fs = Vec::with_capacity(self.degrees.len());
                    for &d in &self.degrees {
                        let f = loop {
                            let f = random_homogeneous_with(&self.ring, d, &mut rng, SampleConfig::default())?;
                            if !f.is_zero() {
                                break f;
                            }
                        };
                        fs.push(f);
                    }
                    out.push((i as u128, fs));
                }
                Ok(out)
            }
        }
    }
}

pub(crate) fn poly_strings(fs: &[Poly]) -> Vec<String> {
    fs.iter().map(|f| f.to_string()).collect()
}
