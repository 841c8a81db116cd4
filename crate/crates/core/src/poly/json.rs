//! JSON polynomial format:
//! `{"field": descriptor, "vars": [{"name", "degree"}], "terms": [{"coeff", "exps"}]}`
//! with terms in descending grevlex order.

use serde::{Deserialize, Serialize};

use super::{Monomial, MonomialOrder, Poly, Ring, RingCtx, Var};
use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarJson {
    pub name: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub field: FieldDescriptor,
    pub vars: Vec<VarJson>,
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    pub fn ring(&self) -> Result<Ring> {
        let field = Field::new(self.field.clone())?;
        let vars = self.vars.iter().map(|v| Var { name: v.name.clone(), degree: v.degree }).collect();
        RingCtx::new(field, vars)
    }

    /// Decodes into `ring` (which must match the declared ring).
    pub fn to_poly_in(&self, ring: &Ring) -> Result<Poly> {
        if self.field != *ring.field().descriptor()
            || self.vars.len() != ring.nvars()
            || self.vars.iter().zip(ring.vars()).any(|(a, b)| a.name != b.name || a.degree != b.degree)
        {
            return Err(Error::RingMismatch);
        }
        let k = ring.field();
        let mut p = Poly::zero(ring);
        for t in &self.terms {
            if t.exps.len() != ring.nvars() {
                return Err(Error::Parse(format!("exponent vector {:?} has wrong length", t.exps)));
            }
            p.add_term(Monomial::new(t.exps.clone()), k.parse(&t.coeff)?);
        }
        Ok(p)
    }

    pub fn to_poly(&self) -> Result<Poly> {
        self.to_poly_in(&self.ring()?)
    }
}

impl From<&Poly> for PolyJson {
    fn from(p: &Poly) -> PolyJson {
        let k = p.field();
        PolyJson {
            field: k.descriptor().clone(),
            vars: p.ring().vars().iter().map(|v| VarJson { name: v.name.clone(), degree: v.degree }).collect(),
            terms: p
                .sorted_terms(&MonomialOrder::Grevlex)
                .into_iter()
                .map(|(m, c)| TermJson { coeff: k.format(c), exps: m.exps().to_vec() })
                .collect(),
        }
    }
}

impl Poly {
    pub fn to_json(&self) -> PolyJson {
        PolyJson::from(self)
    }

    pub fn from_json(j: &PolyJson) -> Result<Poly> {
        j.to_poly()
    }
}

/// Decodes a list of polynomials that must share one ring.
pub fn polys_from_json(list: &[PolyJson]) -> Result<Vec<Poly>> {
    let first = list.first().ok_or(Error::ZeroInput)?;
    let ring = first.ring()?;
    list.iter().map(|j| j.to_poly_in(&ring)).collect()
}
