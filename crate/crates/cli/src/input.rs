//! Input documents.
//!
//! A polynomial document is either a list of canonical polynomial objects
//! (`{"field", "vars", "terms"}`), a single such object, or
//!
//! ```json
//! {"field": "F3", "vars": 3, "params": ["t"], "polys": ["x1*x2", "t*x3^2"]}
//! ```
//!
//! where `field` is a short name (`QQ`, `F7`, `F4`) or a descriptor object,
//! `vars` is a count, a list of names, or a list of `{"name", "degree"}`,
//! and `params` (optional) turns the coefficient field into `k(params)`.
//! A `matrix` entry `{"target_twists": [..], "columns": [[..], ..]}` may
//! replace `polys` for module presentations.

use serde::Deserialize;
use serde_json::Value;
use stillman_core::field::FieldDescriptor;
use stillman_core::families::{LimitElement, PowerSumTail, TailWeight};
use stillman_core::poly::{polys_from_json, PolyJson, Var};
use stillman_core::resolution::{FreeModule, GradedMap};
use stillman_core::{Error, Field, Poly, Result, Ring, RingCtx};

pub fn parse_field(s: &str) -> Result<Field> {
    let bad = || Error::Parse(format!("unknown field {s:?}; use QQ, F<p> or F4"));
    match s {
        "QQ" | "Q" => Ok(Field::rationals()),
        "F4" => Ok(Field::f4()),
        _ => {
            let q: u64 = s.strip_prefix('F').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            Field::prime(q)
        }
    }
}

fn field_of(v: &Value) -> Result<FieldDescriptor> {
    match v {
        Value::String(s) => Ok(parse_field(s)?.descriptor().clone()),
        other => serde_json::from_value(other.clone()).map_err(|e| Error::Parse(format!("field: {e}"))),
    }
}

fn vars_of(v: Option<&Value>) -> Result<Vec<Var>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum VarSpec {
        Name(String),
        Full { name: String, degree: u32 },
    }
    match v {
        None => Err(Error::Parse("missing \"vars\"".into())),
        Some(Value::Number(n)) => {
            let n = n.as_u64().ok_or_else(|| Error::Parse("vars must be a count".into()))?;
            Ok((1..=n).map(|i| Var { name: format!("x{i}"), degree: 1 }).collect())
        }
        Some(other) => {
            let specs: Vec<VarSpec> =
                serde_json::from_value(other.clone()).map_err(|e| Error::Parse(format!("vars: {e}")))?;
            Ok(specs
                .into_iter()
                .map(|s| match s {
                    VarSpec::Name(name) => Var { name, degree: 1 },
                    VarSpec::Full { name, degree } => Var { name, degree },
                })
                .collect())
        }
    }
}

fn ring_of(doc: &serde_json::Map<String, Value>) -> Result<Ring> {
    let mut desc = field_of(doc.get("field").ok_or_else(|| Error::Parse("missing \"field\"".into()))?)?;
    if let Some(p) = doc.get("params") {
        let params: Vec<String> = serde_json::from_value(p.clone()).map_err(|e| Error::Parse(format!("params: {e}")))?;
        if !params.is_empty() {
            let names: Vec<&str> = params.iter().map(|s| s.as_str()).collect();
            desc = FieldDescriptor::rational_functions(&names, desc);
        }
    }
    RingCtx::new(Field::new(desc)?, vars_of(doc.get("vars"))?)
}

fn poly_in(ring: &Ring, v: &Value) -> Result<Poly> {
    match v {
        Value::String(s) => Poly::parse(ring, s),
        other => {
            let j: PolyJson = serde_json::from_value(other.clone()).map_err(|e| Error::Parse(format!("polynomial: {e}")))?;
            j.to_poly_in(ring)
        }
    }
}

/// What a polynomial document contains.
pub struct PolyDoc {
    pub ring: Ring,
    pub polys: Vec<Poly>,
    pub matrix: Option<GradedMap>,
}

impl PolyDoc {
    pub fn first(&self) -> Result<&Poly> {
        self.polys.first().ok_or(Error::ZeroInput)
    }

    /// The presentation to resolve: the matrix if given, else `R/(polys)`.
    pub fn presentation(&self) -> Result<GradedMap> {
        match &self.matrix {
            Some(m) => Ok(m.clone()),
            None => GradedMap::cyclic(&self.ring, &self.polys),
        }
    }
}

pub fn read_polys(text: &str) -> Result<PolyDoc> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("input is not JSON: {e}")))?;
    match v {
        Value::Array(items) => {
            let js: Vec<PolyJson> =
                serde_json::from_value(Value::Array(items)).map_err(|e| Error::Parse(format!("polynomial list: {e}")))?;
            let polys = polys_from_json(&js)?;
            Ok(PolyDoc { ring: polys[0].ring().clone(), polys, matrix: None })
        }
        Value::Object(doc) if doc.contains_key("terms") => {
            let j: PolyJson =
                serde_json::from_value(Value::Object(doc)).map_err(|e| Error::Parse(format!("polynomial: {e}")))?;
            let p = j.to_poly()?;
            Ok(PolyDoc { ring: p.ring().clone(), polys: vec![p], matrix: None })
        }
        Value::Object(doc) => {
            let ring = ring_of(&doc)?;
            let polys = match doc.get("polys") {
                Some(Value::Array(ps)) => ps.iter().map(|p| poly_in(&ring, p)).collect::<Result<Vec<_>>>()?,
                Some(_) => return Err(Error::Parse("\"polys\" must be a list".into())),
                None => vec![],
            };
            let matrix = doc.get("matrix").map(|m| matrix_in(&ring, m)).transpose()?;
            if polys.is_empty() && matrix.is_none() {
                return Err(Error::Parse("expected \"polys\" or \"matrix\"".into()));
            }
            Ok(PolyDoc { ring, polys, matrix })
        }
        _ => Err(Error::Parse("expected a JSON object or list".into())),
    }
}

fn matrix_in(ring: &Ring, v: &Value) -> Result<GradedMap> {
    #[derive(Deserialize)]
    struct MatrixSpec {
        target_twists: Vec<u32>,
        columns: Vec<Vec<Value>>,
    }
    let m: MatrixSpec = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("matrix: {e}")))?;
    let columns = m
        .columns
        .iter()
        .map(|c| c.iter().map(|p| poly_in(ring, p)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let target = FreeModule::new(ring, m.target_twists.clone());
    let mut twists = vec![];
    for col in &columns {
        if col.len() != m.target_twists.len() {
            return Err(Error::Parse("matrix column length differs from the target rank".into()));
        }
        let d = col
            .iter()
            .zip(&m.target_twists)
            .find(|(p, _)| !p.is_zero())
            .map(|(p, &t)| p.degree().map(|d| d + t))
            .transpose()?
            .unwrap_or(0);
        twists.push(d);
    }
    GradedMap::new(FreeModule::new(ring, twists), target, columns)
}

/// `{"field": .., "elements": [{"n0", "head", "tail": {"c", "d", "start", "weight"}}]}`.
pub fn read_limits(text: &str) -> Result<Vec<LimitElement>> {
    #[derive(Deserialize)]
    struct TailSpec {
        c: String,
        d: u32,
        start: Option<usize>,
        #[serde(default = "constant")]
        weight: TailWeight,
    }
    fn constant() -> TailWeight {
        TailWeight::Constant
    }
    #[derive(Deserialize)]
    struct ElemSpec {
        #[serde(default)]
        n0: usize,
        head: Option<String>,
        tail: Option<TailSpec>,
    }
    #[derive(Deserialize)]
    struct Doc {
        field: Value,
        elements: Vec<ElemSpec>,
    }
    let doc: Doc = serde_json::from_str(text).map_err(|e| Error::Parse(format!("limit elements: {e}")))?;
    let k = Field::new(field_of(&doc.field)?)?;
    doc.elements
        .into_iter()
        .map(|e| {
            let ring = RingCtx::standard(&k, e.n0);
            let head = match &e.head {
                Some(s) => Poly::parse(&ring, s)?,
                None => Poly::zero(&ring),
            };
            let tail = e
                .tail
                .map(|t| -> Result<PowerSumTail> {
                    Ok(PowerSumTail { c: k.parse(&t.c)?, d: t.d, start: t.start.unwrap_or(e.n0 + 1), weight: t.weight })
                })
                .transpose()?;
            LimitElement::new(&k, head, tail)
        })
        .collect()
}
