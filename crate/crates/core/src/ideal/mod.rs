//! Ideals: Gröbner bases, membership with cofactors, codimension, the two
//! regular-sequence criteria, elimination, and subalgebra computations.

mod hilbert;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

pub use hilbert::{hilbert_numerator, max_independent_set, order_at_one, series_expansion, HilbertData};
pub(crate) use hilbert::{poly_add, poly_shift};

use crate::error::{Error, Result};
use crate::gb::{self, Budget, ModuleShape};
use crate::poly::{HomDegree, Monomial, MonomialOrder, Poly, Ring, RingCtx, Var};

/// A finitely generated ideal with a memo of reduced Gröbner bases.
#[derive(Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    budget: Budget,
    cache: Mutex<HashMap<MonomialOrder, Arc<Vec<Poly>>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().expect("cache lock").clone();
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), budget: self.budget, cache: Mutex::new(cache) }
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Result<Ideal> {
        if gens.iter().any(|g| g.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(Ideal { ring: ring.clone(), gens, budget: Budget::default(), cache: Mutex::new(HashMap::new()) })
    }

    /// Ideal generated by a nonempty list sharing one ring.
    pub fn from_polys(gens: Vec<Poly>) -> Result<Ideal> {
        let ring = gens.first().ok_or(Error::ZeroInput)?.ring().clone();
        Ideal::new(&ring, gens)
    }

    pub fn with_budget(mut self, budget: Budget) -> Ideal {
        self.budget = budget;
        self
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    /// Reduced Gröbner basis, memoized per order.
    pub fn groebner(&self, order: &MonomialOrder) -> Result<Arc<Vec<Poly>>> {
        if let Some(gb) = self.cache.lock().expect("cache lock").get(order) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(gb::groebner_basis(&self.ring, &self.gens, order, self.budget)?);
        self.cache.lock().expect("cache lock").entry(order.clone()).or_insert_with(|| gb.clone());
        Ok(gb)
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        gb::normal_form(f, &self.groebner(&MonomialOrder::Grevlex)?, &MonomialOrder::Grevlex)
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn is_unit(&self) -> Result<bool> {
        let gb = self.groebner(&MonomialOrder::Grevlex)?;
        Ok(gb.iter().any(|g| g.is_constant() && !g.is_zero()))
    }

    /// Cofactors `c_i` with `Σ c_i gen_i = f`, or `None` if `f` is not a member.
    pub fn lift(&self, f: &Poly) -> Result<Option<Vec<Poly>>> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let m = self.gens.len();
        let deg = |p: &Poly| match p.homogeneous_degree() {
            HomDegree::Homogeneous(d) => d,
            _ => 0,
        };
        let mut twists = vec![0];
        twists.extend(self.gens.iter().map(deg));
        let shape = ModuleShape { twists, split: 1 };
        let zero = Poly::zero(&self.ring);
        let cols: Vec<Vec<Poly>> = self
            .gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let mut v = vec![zero.clone(); m + 1];
                v[0] = g.clone();
                v[i + 1] = Poly::one(&self.ring);
                v
            })
            .collect();
        let mgb = gb::module_groebner(&self.ring, &shape, &cols, self.budget)?;
        let mut target = vec![zero; m + 1];
        target[0] = f.clone();
        let r = gb::module_normal_form(&self.ring, &shape, &target, &mgb);
        if !r[0].is_zero() {
            return Ok(None);
        }
        Ok(Some(r[1..].iter().map(|c| c.neg()).collect()))
    }

    pub fn leading_monomials(&self) -> Result<Vec<Monomial>> {
        let gb = self.groebner(&MonomialOrder::Grevlex)?;
        Ok(gb
            .iter()
            .map(|g| g.leading_term(&MonomialOrder::Grevlex).expect("nonzero").0.clone())
            .collect())
    }

    /// Hilbert series of `R/I` and the dimension read off two ways, which
    /// must agree.
    pub fn hilbert(&self) -> Result<HilbertData> {
        let lead = self.leading_monomials()?;
        let n = self.ring.nvars();
        let numerator = hilbert_numerator(&self.ring, &lead);
        if numerator.is_empty() {
            return Err(Error::UnitIdeal);
        }
        let dimension = n - order_at_one(&numerator);
        let by_sets = max_independent_set(n, &lead);
        if by_sets != dimension {
            return Err(Error::Invariant(format!("dimension {dimension} from the series, {by_sets} from independent sets")));
        }
        Ok(HilbertData { numerator, dimension, codimension: n - dimension })
    }

    /// `#vars − dim R/I`, from independent sets modulo the leading-term ideal.
    pub fn codimension(&self) -> Result<usize> {
        let lead = self.leading_monomials()?;
        if lead.iter().any(|m| m.is_one()) {
            return Err(Error::UnitIdeal);
        }
        let n = self.ring.nvars();
        Ok(n - max_independent_set(n, &lead))
    }

    /// The contraction `I ∩ k[remaining variables]`, as an ideal of the
    /// subring on the variables not in `drop` (order preserved).
    pub fn eliminate(&self, drop: &[usize]) -> Result<Ideal> {
        let n = self.ring.nvars();
        if let Some(&bad) = drop.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange(bad));
        }
        let mut block: Vec<usize> = drop.to_vec();
        block.sort_unstable();
        block.dedup();
        let order = MonomialOrder::Elimination { block: block.clone() };
        let gb = self.groebner(&order)?;
        let keep: Vec<usize> = (0..n).filter(|i| !block.contains(i)).collect();
        let sub = RingCtx::new(self.ring.field().clone(), keep.iter().map(|&i| self.ring.vars()[i].clone()).collect())?;
        let gens = gb
            .iter()
            .filter(|g| g.terms().all(|(m, _)| !order.touches_block(m)))
            .map(|g| restrict(g, &sub, &keep))
            .collect();
        Ideal::new(&sub, gens)
    }
}

/// Moves a polynomial supported on the variables `keep` into `sub`.
fn restrict(f: &Poly, sub: &Ring, keep: &[usize]) -> Poly {
    Poly::from_terms(
        sub,
        f.terms().map(|(m, c)| (Monomial::new(keep.iter().map(|&i| m.exps()[i]).collect()), c.clone())),
    )
}

pub fn membership(f: &Poly, ideal: &Ideal) -> Result<bool> {
    ideal.contains(f)
}

pub fn codimension(ideal: &Ideal) -> Result<usize> {
    ideal.codimension()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegSeqMethod {
    Codim,
    Koszul,
}

/// Validates a candidate sequence: `Ok(false)` when some entry is zero or a
/// nonzero constant, `Err` when an entry is not homogeneous.
fn regseq_degrees(fs: &[Poly]) -> Result<Option<Vec<u32>>> {
    let ring = match fs.first() {
        Some(f) => f.ring(),
        None => return Ok(Some(Vec::new())),
    };
    let mut degs = Vec::with_capacity(fs.len());
    let mut degenerate = false;
    for f in fs {
        if f.ring() != ring {
            return Err(Error::RingMismatch);
        }
        match f.homogeneous_degree() {
            HomDegree::NotHomogeneous => return Err(Error::NotHomogeneous),
            HomDegree::ZeroPoly | HomDegree::Homogeneous(0) => degenerate = true,
            HomDegree::Homogeneous(d) => degs.push(d),
        }
    }
    Ok(if degenerate { None } else { Some(degs) })
}

pub fn is_regular_sequence(fs: &[Poly], method: RegSeqMethod) -> Result<bool> {
    is_regular_sequence_with(fs, method, Budget::default())
}

pub fn is_regular_sequence_with(fs: &[Poly], method: RegSeqMethod, budget: Budget) -> Result<bool> {
    let Some(degs) = regseq_degrees(fs)? else {
        return Ok(false);
    };
    if fs.is_empty() {
        return Ok(true);
    }
    match method {
        RegSeqMethod::Codim => Ok(Ideal::from_polys(fs.to_vec())?.with_budget(budget).codimension()? == fs.len()),
        RegSeqMethod::Koszul => koszul_test(fs, &degs, budget),
    }
}

/// Syzygy module of a row of polynomials, as a Gröbner basis of vectors.
pub(crate) fn row_syzygies(fs: &[Poly], degs: &[u32], budget: Budget) -> Result<Vec<Vec<Poly>>> {
    let ring = fs[0].ring();
    let r = fs.len();
    let mut twists = vec![0];
    twists.extend_from_slice(degs);
    let shape = ModuleShape { twists, split: 1 };
    let zero = Poly::zero(ring);
    let cols: Vec<Vec<Poly>> = fs
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let mut v = vec![zero.clone(); r + 1];
            v[0] = f.clone();
            v[i + 1] = Poly::one(ring);
            v
        })
        .collect();
    let gb = gb::module_groebner(ring, &shape, &cols, budget)?;
    Ok(gb.into_iter().filter(|v| v[0].is_zero()).map(|mut v| v.split_off(1)).collect())
}

/// Every syzygy lies in the span of the Koszul syzygies `f_j e_i − f_i e_j`.
fn koszul_test(fs: &[Poly], degs: &[u32], budget: Budget) -> Result<bool> {
    let ring = fs[0].ring();
    let r = fs.len();
    let syz = row_syzygies(fs, degs, budget)?;
    if syz.is_empty() {
        return Ok(true);
    }
    let zero = Poly::zero(ring);
    let mut kos = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let mut v = vec![zero.clone(); r];
            v[i] = fs[j].clone();
            v[j] = fs[i].neg();
            kos.push(v);
        }
    }
    let shape = ModuleShape { twists: degs.to_vec(), split: 0 };
    let kgb = gb::module_groebner(ring, &shape, &kos, budget)?;
    Ok(syz.iter().all(|s| gb::module_normal_form(ring, &shape, s, &kgb).iter().all(|p| p.is_zero())))
}

/// The ring `k[x.., Y1..Ys]` with `deg Yi = deg gi`, the ideal
/// `(Yi − gi)`, and its Gröbner basis for the order eliminating the x block.
#[derive(Debug)]
pub struct Subalgebra {
    gens: Vec<Poly>,
    big: Ring,
    y_ring: Ring,
    order: MonomialOrder,
    gb: Vec<Poly>,
}

impl Subalgebra {
    pub fn new(gs: &[Poly]) -> Result<Subalgebra> {
        Subalgebra::with_budget(gs, Budget::default())
    }

    pub fn with_budget(gs: &[Poly], budget: Budget) -> Result<Subalgebra> {
        let ring = gs.first().ok_or(Error::ZeroInput)?.ring().clone();
        let mut ydeg = Vec::with_capacity(gs.len());
        for g in gs {
            if g.ring() != &ring {
                return Err(Error::RingMismatch);
            }
            match g.homogeneous_degree() {
                HomDegree::NotHomogeneous => return Err(Error::NotHomogeneous),
                HomDegree::ZeroPoly => return Err(Error::ZeroInput),
                HomDegree::Homogeneous(0) => return Err(Error::DegreeTooLow("subalgebra generators must have positive degree".into())),
                HomDegree::Homogeneous(d) => ydeg.push(d),
            }
        }
        let mut prefix = String::from("Y");
        while ring.vars().iter().any(|v| v.name.starts_with(&prefix)) || ring.field().param_names().iter().any(|p| p.starts_with(&prefix)) {
            prefix.insert(0, '_');
        }
        let yvars: Vec<Var> = ydeg.iter().enumerate().map(|(i, &d)| Var { name: format!("{prefix}{}", i + 1), degree: d }).collect();
        let n = ring.nvars();
        let big = ring.extended(&yvars)?;
        let y_ring = RingCtx::new(ring.field().clone(), yvars)?;
        let order = MonomialOrder::Elimination { block: (0..n).collect() };
        let ideal: Vec<Poly> =
            gs.iter().enumerate().map(|(i, g)| &Poly::var(&big, n + i) - &g.embed(&big)).collect();
        let gb = gb::groebner_basis(&big, &ideal, &order, budget)?;
        Ok(Subalgebra { gens: gs.to_vec(), big, y_ring, order, gb })
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    /// The weighted ring `k[Y1..Ys]`.
    pub fn y_ring(&self) -> &Ring {
        &self.y_ring
    }

    fn y_positions(&self) -> Vec<usize> {
        let n = self.big.nvars() - self.y_ring.nvars();
        (n..self.big.nvars()).collect()
    }

    /// Generators of the kernel of `Yi -> gi`, ascending.
    pub fn relations(&self) -> Vec<Poly> {
        let ys = self.y_positions();
        self.gb
            .iter()
            .filter(|g| g.terms().all(|(m, _)| !self.order.touches_block(m)))
            .map(|g| restrict(g, &self.y_ring, &ys))
            .collect()
    }

    /// An expression `P(Y)` with `P(g) = f`, or `None` if `f ∉ k[g]`.
    pub fn express(&self, f: &Poly) -> Result<Option<Poly>> {
        if f.ring().nvars() + self.y_ring.nvars() != self.big.nvars() || f.field() != self.big.field() {
            return Err(Error::RingMismatch);
        }
        let nf = gb::normal_form(&f.embed(&self.big), &self.gb, &self.order)?;
        if nf.terms().any(|(m, _)| self.order.touches_block(m)) {
            return Ok(None);
        }
        Ok(Some(restrict(&nf, &self.y_ring, &self.y_positions())))
    }

    /// Evaluates `P(Y)` at `Y = g`.
    pub fn substitute(&self, p: &Poly) -> Result<Poly> {
        let hom = crate::poly::GradedHom::new(&self.y_ring, self.gens[0].ring(), self.gens.clone())?;
        hom.apply(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Independence {
    pub independent: bool,
    /// A minimal-degree relation among the forms when dependent, in the
    /// variables `Y1..Ys`.
    pub relation: Option<Poly>,
}

pub fn algebraically_independent(fs: &[Poly]) -> Result<Independence> {
    let sub = Subalgebra::new(fs)?;
    let relation = sub.relations().into_iter().next();
    Ok(Independence { independent: relation.is_none(), relation })
}

pub fn subalgebra_membership(f: &Poly, gs: &[Poly]) -> Result<Option<Poly>> {
    Subalgebra::new(gs)?.express(f)
}
