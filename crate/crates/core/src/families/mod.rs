//! Truncatable inverse-limit elements and parametric families over
//! `A = k[t1..tm]`: specialization, regular locus and constant-Betti opens.
//!
//! The open sets come from running the computation over `Frac(A)` with a
//! traced field. Every element the computation inverts is recorded; if `g`
//! is the product of their numerators, all intermediate data lies in `A_g`
//! and every Gröbner basis is monic, so at a point `y` with `g(y) ≠ 0` the
//! specialized bases are again Gröbner bases with the same leading terms.

mod limit;
#[cfg(test)]
mod tests;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{param_lcm, Field, FieldDescriptor, FieldElem, ParamPoly};
use crate::gb::{self, Budget, ModuleShape};
use crate::ideal::Ideal;
use crate::poly::{MonomialOrder, Poly, Ring, RingCtx, Var};
use crate::resolution::{minimal_free_resolution_with, BettiTable, FreeModule, GradedMap};

pub use limit::{
    regseq_stabilization, regseq_stabilization_with, truncate_limit, LimitElement, PowerSumTail, Stabilization,
    TailWeight,
};

/// `k(t1..tm)[x1..xn]` restricted to polynomials whose coefficients lie in
/// `k[t1..tm]`.
#[derive(Clone, Debug)]
pub struct FamilyRing {
    ring: Ring,
}

impl FamilyRing {
    pub fn new(base: &Field, params: &[&str], var_degrees: &[u32]) -> Result<FamilyRing> {
        if base.frac_parts().is_some() {
            return Err(Error::UnsupportedField("the base of a family must not itself have parameters".into()));
        }
        let k = Field::new(FieldDescriptor::rational_functions(params, base.descriptor().clone()))?;
        let vars = var_degrees.iter().enumerate().map(|(i, &d)| Var { name: format!("x{}", i + 1), degree: d }).collect();
        Ok(FamilyRing { ring: RingCtx::new(k, vars)? })
    }

    /// Wraps an existing ring over a rational function field.
    pub fn from_ring(ring: &Ring) -> Result<FamilyRing> {
        match ring.field().frac_parts() {
            Some((base, _)) if base.frac_parts().is_none() => Ok(FamilyRing { ring: ring.clone() }),
            _ => Err(Error::UnsupportedField("family rings need coefficients in k(t1..tm)".into())),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn base(&self) -> &Field {
        self.ring.field().frac_parts().expect("rational function field").0
    }

    pub fn nparams(&self) -> usize {
        self.ring.field().frac_parts().expect("rational function field").1
    }

    pub fn param_names(&self) -> &[String] {
        self.ring.field().param_names()
    }

    /// Parses a polynomial and checks that its coefficients are polynomial
    /// in the parameters.
    pub fn parse(&self, s: &str) -> Result<Poly> {
        let p = Poly::parse(&self.ring, s)?;
        self.check(&p)?;
        Ok(p)
    }

    pub fn check(&self, p: &Poly) -> Result<()> {
        if *p.ring() != self.ring {
            return Err(Error::RingMismatch);
        }
        for (_, c) in p.terms() {
            match c {
                FieldElem::Frac(r) if r.is_polynomial() => {}
                _ => {
                    return Err(Error::NotApplicable(format!(
                        "coefficient {} is not polynomial in the parameters",
                        self.ring.field().format(c)
                    )))
                }
            }
        }
        Ok(())
    }
}

/// Values of the parameters in a target field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecPoint {
    pub field: Field,
    pub values: Vec<FieldElem>,
}

impl SpecPoint {
    pub fn new(field: &Field, values: Vec<FieldElem>) -> Result<SpecPoint> {
        if values.iter().any(|v| !field.contains(v)) {
            return Err(Error::DescriptorMismatch);
        }
        Ok(SpecPoint { field: field.clone(), values })
    }

    pub fn from_i64(field: &Field, values: &[i64]) -> SpecPoint {
        SpecPoint { field: field.clone(), values: values.iter().map(|&v| field.from_i64(v)).collect() }
    }
}

/// Maps base-field elements into the field of `y`.
fn base_embedding(base: &Field, target: &Field) -> Result<impl Fn(&FieldElem) -> FieldElem> {
    let same = base == target;
    let ok = same
        || match base.descriptor() {
            FieldDescriptor::PrimeField { p } => target.characteristic() == *p,
            FieldDescriptor::Rationals => target.characteristic() == 0,
            _ => false,
        };
    if !ok {
        return Err(Error::CharacteristicMismatch);
    }
    let target = target.clone();
    Ok(move |c: &FieldElem| match c {
        _ if same => c.clone(),
        FieldElem::Mod(v) => target.from_i64(*v as i64),
        FieldElem::Rational(q) => target.from_rational(q).expect("nonzero denominator"),
        _ => unreachable!("checked above"),
    })
}

/// Evaluates a parameter polynomial at `y`.
pub fn eval_param(f: &ParamPoly, base: &Field, y: &SpecPoint) -> Result<FieldElem> {
    if y.values.len() != f.nvars() {
        return Err(Error::IndexOutOfRange(y.values.len()));
    }
    let embed = base_embedding(base, &y.field)?;
    Ok(f.eval(&y.field, &y.values, embed))
}

fn eval_coeff(k: &Field, c: &FieldElem, y: &SpecPoint) -> Result<FieldElem> {
    let (base, _) = k.frac_parts().ok_or_else(|| Error::NotApplicable("not a family".into()))?;
    let FieldElem::Frac(r) = c else { return Err(Error::DescriptorMismatch) };
    let num = eval_param(&r.num, base, y)?;
    let den = eval_param(&r.den, base, y)?;
    y.field.div(&num, &den)
}

/// The ring of `f_y`: same variables over the field of `y`.
pub fn fibre_ring(ring: &Ring, y: &SpecPoint) -> Result<Ring> {
    RingCtx::new(y.field.clone(), ring.vars().to_vec())
}

/// `f_y`: substitutes `t ↦ y` in every coefficient.
pub fn specialize(f: &Poly, y: &SpecPoint) -> Result<Poly> {
    let target = fibre_ring(f.ring(), y)?;
    let k = f.field().clone();
    f.map_coeffs(&target, |c| eval_coeff(&k, c, y))
}

/// Entrywise specialization of a presentation matrix.
pub fn specialize_map(phi: &GradedMap, y: &SpecPoint) -> Result<GradedMap> {
    let target = fibre_ring(phi.ring(), y)?;
    let columns = phi
        .columns()
        .iter()
        .map(|col| col.iter().map(|p| specialize(p, y)).collect::<Result<Vec<Poly>>>())
        .collect::<Result<Vec<_>>>()?;
    GradedMap::new(
        FreeModule::new(&target, phi.source().twists().to_vec()),
        FreeModule::new(&target, phi.target().twists().to_vec()),
        columns,
    )
}

/// `D(f) = { y : f(y) ≠ 0 }` in parameter space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishedOpen {
    f: ParamPoly,
    base: Field,
    names: Vec<String>,
}

impl DistinguishedOpen {
    pub fn new(f: ParamPoly, base: &Field, names: &[String]) -> Result<DistinguishedOpen> {
        if f.is_zero() {
            return Err(Error::ZeroInput);
        }
        if f.nvars() != names.len() {
            return Err(Error::IndexOutOfRange(names.len()));
        }
        Ok(DistinguishedOpen { f, base: base.clone(), names: names.to_vec() })
    }

    pub fn whole(base: &Field, names: &[String]) -> DistinguishedOpen {
        DistinguishedOpen { f: ParamPoly::one(base, names.len()), base: base.clone(), names: names.to_vec() }
    }

    pub fn polynomial(&self) -> &ParamPoly {
        &self.f
    }

    pub fn is_whole_space(&self) -> bool {
        self.f.is_constant()
    }

    pub fn contains(&self, y: &SpecPoint) -> Result<bool> {
        Ok(!y.field.is_zero(&eval_param(&self.f, &self.base, y)?))
    }
}

impl fmt::Display for DistinguishedOpen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.f.format(&self.base, &self.names))
    }
}

impl Serialize for DistinguishedOpen {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Runs `work` over a traced copy of the coefficient field and returns its
/// result together with the monic lcm of numerators and denominators of
/// everything inverted, and of the denominators in `inputs`.
fn traced<T>(
    ring: &Ring,
    inputs: &[&Poly],
    work: impl FnOnce(&Ring, &dyn Fn(&Poly) -> Poly) -> Result<T>,
) -> Result<(T, ParamPoly)> {
    let k = ring.field();
    let (base, m) = k.frac_parts().ok_or_else(|| Error::UnsupportedField("families need k(t1..tm)".into()))?;
    let tk = k.traced();
    let tring = ring.with_field(&tk);
    let rehome = |p: &Poly| p.with_ring(&tring);
    let out = work(&tring, &rehome)?;
    let mut g = ParamPoly::one(base, m);
    let mut absorb = |r: &ParamPoly| {
        if !r.is_constant() {
            g = param_lcm(base, &g, r);
        }
    };
    for p in inputs {
        for (_, c) in p.terms() {
            if let FieldElem::Frac(r) = c {
                absorb(&r.den);
            }
        }
    }
    for c in tk.take_trace() {
        if let FieldElem::Frac(r) = c {
            absorb(&r.num);
            absorb(&r.den);
        }
    }
    Ok((out, g.monic(base).0))
}

/// Open set where the truncations `x_{>n} ↦ 0` of `fs` stay a regular
/// sequence, as `D(g)`.
pub fn regular_locus(fs: &[Poly], n: usize) -> Result<DistinguishedOpen> {
    regular_locus_with(fs, n, Budget::default())
}

pub fn regular_locus_with(fs: &[Poly], n: usize, budget: Budget) -> Result<DistinguishedOpen> {
    let Some(first) = fs.first() else {
        return Err(Error::ZeroInput);
    };
    let family = FamilyRing::from_ring(first.ring())?;
    for f in fs {
        family.check(f)?;
    }
    let truncated: Vec<Poly> = fs.iter().map(|f| f.truncate_vars(n)).collect();
    if truncated.iter().any(|f| f.is_zero()) {
        return Err(Error::GenericNotRegular);
    }
    let ring = truncated[0].ring().clone();
    let inputs: Vec<&Poly> = truncated.iter().collect();
    let (codim, g) = traced(&ring, &inputs, |tring, rehome| {
        let gens: Vec<Poly> = truncated.iter().map(rehome).collect();
        let ideal = Ideal::new(tring, gens)?.with_budget(budget);
        // monic reduced basis; leading coefficients are inverted and traced
        ideal.groebner(&MonomialOrder::Grevlex)?;
        match ideal.codimension() {
            Err(Error::UnitIdeal) => Ok(None),
            other => other.map(Some),
        }
    })?;
    if codim != Some(fs.len()) {
        return Err(Error::GenericNotRegular);
    }
    DistinguishedOpen::new(g, family.base(), family.param_names())
}

/// Output of [`constant_betti_open`].
#[derive(Clone, Debug, Serialize)]
pub struct ConstantBetti {
    pub open: DistinguishedOpen,
    #[serde(serialize_with = "serialize_table")]
    pub table: BettiTable,
    pub method: &'static str,
    /// Degree bound of a truncated torsion check; `None` because the traced
    /// computation needs none.
    pub degree_bound: Option<u32>,
}

fn serialize_table<S: Serializer>(t: &BettiTable, s: S) -> std::result::Result<S::Ok, S::Error> {
    t.to_entries().serialize(s)
}

pub fn constant_betti_open(presentation: &GradedMap) -> Result<ConstantBetti> {
    constant_betti_open_with(presentation, Budget::default())
}

/// Generic Betti table of `coker(presentation)` and an open `D(f)` on which
/// every fibre has that table.
pub fn constant_betti_open_with(presentation: &GradedMap, budget: Budget) -> Result<ConstantBetti> {
    let family = FamilyRing::from_ring(presentation.ring())?;
    for col in presentation.columns() {
        for p in col {
            family.check(p)?;
        }
    }
    let inputs: Vec<&Poly> = presentation.columns().iter().flatten().collect();
    let (table, f) = traced(presentation.ring(), &inputs, |tring, rehome| {
        let phi = presentation.map_entries(tring, rehome)?;
        // the image of the presentation fixes the Hilbert function of M
        image_basis(&phi, budget)?;
        let res = minimal_free_resolution_with(&phi, budget)?;
        // bases of every image fix the rank of each differential degreewise
        for d in res.maps() {
            image_basis(d, budget)?;
        }
        Ok(res.betti())
    })?;
    Ok(ConstantBetti {
        open: DistinguishedOpen::new(f, family.base(), family.param_names())?,
        table,
        method: "traced-specialization",
        degree_bound: None,
    })
}

fn image_basis(phi: &GradedMap, budget: Budget) -> Result<()> {
    let cols: Vec<Vec<Poly>> = phi.columns().iter().filter(|c| c.iter().any(|p| !p.is_zero())).cloned().collect();
    if cols.is_empty() {
        return Ok(());
    }
    let shape = ModuleShape { twists: phi.target().twists().to_vec(), split: 0 };
    gb::module_groebner(phi.ring(), &shape, &cols, budget)?;
    Ok(())
}
