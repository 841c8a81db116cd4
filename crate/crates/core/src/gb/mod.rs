//! Buchberger's algorithm over free modules (rank 1 gives ideals), plus
//! graded linear algebra used for minimal generating sets.
//!
//! Terms carry an integer sort key that is additive under multiplication by
//! monomials, so the order is a plain lexicographic comparison of keys.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::poly::{HomDegree, Monomial, MonomialOrder, Poly, Ring};

/// Limits on a Gröbner computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_pairs: Option<usize>,
    pub max_degree: Option<u32>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: Some(200_000), max_degree: None }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_pairs: None, max_degree: None }
    }
}

/// Order on terms `m * e_c`.
#[derive(Clone, Debug)]
pub(crate) enum TermOrder {
    Mono(MonomialOrder),
    /// Components below `split` are larger than all others; inside a block,
    /// terms compare by `deg m + twist[c]`, then grevlex on `m`, then by
    /// smaller component index.
    Module { twists: Vec<u32>, split: usize },
}

type Key = Box<[i64]>;

#[derive(Clone, Debug)]
struct Term {
    key: Key,
    mon: Monomial,
    comp: usize,
    coeff: FieldElem,
}

/// Sparse module element, terms sorted largest first.
type Vector = Vec<Term>;

fn grevlex_key(ring: &Ring, exps: &[u32], keep: &dyn Fn(usize) -> bool, out: &mut Vec<i64>) {
    let mut d = 0i64;
    for (i, &e) in exps.iter().enumerate() {
        if keep(i) {
            d += e as i64 * ring.var_degree(i) as i64;
        }
    }
    out.push(d);
    for i in (0..exps.len()).rev() {
        if keep(i) {
            out.push(-(exps[i] as i64));
        }
    }
}

pub(crate) struct Ctx<'a> {
    ring: &'a Ring,
    order: TermOrder,
}

impl<'a> Ctx<'a> {
    pub(crate) fn new(ring: &'a Ring, order: TermOrder) -> Self {
        Ctx { ring, order }
    }

    fn field(&self) -> &Field {
        self.ring.field()
    }

    fn key(&self, m: &Monomial, comp: usize) -> Key {
        let mut k = Vec::with_capacity(m.len() + 4);
        match &self.order {
            TermOrder::Mono(MonomialOrder::Grevlex) => grevlex_key(self.ring, m.exps(), &|_| true, &mut k),
            TermOrder::Mono(MonomialOrder::Lex) => k.extend(m.exps().iter().map(|&e| e as i64)),
            TermOrder::Mono(MonomialOrder::Elimination { block }) => {
                grevlex_key(self.ring, m.exps(), &|i| block.contains(&i), &mut k);
                grevlex_key(self.ring, m.exps(), &|i| !block.contains(&i), &mut k);
            }
            TermOrder::Module { twists, split } => {
                k.push(if comp < *split { 1 } else { 0 });
                grevlex_key(self.ring, m.exps(), &|_| true, &mut k);
                k[1] += twists[comp] as i64;
                k.push(-(comp as i64));
            }
        }
        k.into_boxed_slice()
    }

    /// Key increment contributed by multiplying with `m`.
    fn shift(&self, m: &Monomial) -> Key {
        match &self.order {
            TermOrder::Module { .. } => {
                let mut k = vec![0];
                grevlex_key(self.ring, m.exps(), &|_| true, &mut k);
                k.push(0);
                k.into_boxed_slice()
            }
            _ => self.key(m, 0),
        }
    }

    fn term_degree(&self, m: &Monomial, comp: usize) -> u32 {
        let d = self.ring.degree(m);
        match &self.order {
            TermOrder::Module { twists, .. } => d + twists[comp],
            _ => d,
        }
    }

    fn is_rank_one(&self) -> bool {
        matches!(self.order, TermOrder::Mono(_))
    }

    fn vector(&self, comps: &[Poly]) -> Vector {
        let mut v: Vector = comps
            .iter()
            .enumerate()
            .flat_map(|(c, p)| {
                p.terms().map(move |(m, x)| (c, m, x)).collect::<Vec<_>>()
            })
            .map(|(c, m, x)| Term { key: self.key(m, c), mon: m.clone(), comp: c, coeff: x.clone() })
            .collect();
        v.sort_by(|a, b| b.key.cmp(&a.key));
        v
    }

    fn polys(&self, v: &Vector, rank: usize) -> Vec<Poly> {
        let mut out: Vec<Vec<(Monomial, FieldElem)>> = vec![Vec::new(); rank];
        for t in v {
            out[t.comp].push((t.mon.clone(), t.coeff.clone()));
        }
        out.into_iter().map(|ts| Poly::from_terms(self.ring, ts)).collect()
    }

    fn make_monic(&self, v: &mut Vector) {
        if let Some(lead) = v.first() {
            let k = self.field();
            if k.is_one(&lead.coeff) {
                return;
            }
            let inv = k.inv(&lead.coeff).expect("nonzero leading coefficient");
            for t in v.iter_mut() {
                t.coeff = k.mul(&t.coeff, &inv);
            }
        }
    }

    /// `c * m * v`.
    fn scaled<'v>(&self, v: &'v [Term], m: &Monomial, c: &FieldElem) -> impl Iterator<Item = Term> + 'v {
        let shift = self.shift(m);
        let k = self.field().clone();
        let (m, c) = (m.clone(), c.clone());
        v.iter().map(move |t| Term {
            key: t.key.iter().zip(shift.iter()).map(|(a, b)| a + b).collect(),
            mon: t.mon.mul(&m),
            comp: t.comp,
            coeff: k.mul(&t.coeff, &c),
        })
    }

    /// Full reduction of `v` modulo monic `reducers`.
    fn reduce(&self, v: Vector, reducers: &[&Vector]) -> Vector {
        let k = self.field();
        let mut work: BTreeMap<Key, (Monomial, usize, FieldElem)> =
            v.into_iter().map(|t| (t.key, (t.mon, t.comp, t.coeff))).collect();
        let mut rem = Vec::new();
        while let Some((key, (mon, comp, coeff))) = work.pop_last() {
            let hit = reducers.iter().find(|r| {
                let lt = &r[0];
                lt.comp == comp && lt.mon.divides(&mon)
            });
            match hit {
                None => rem.push(Term { key, mon, comp, coeff }),
                Some(r) => {
                    let q = mon.div(&r[0].mon);
                    let c = k.neg(&coeff);
                    for t in self.scaled(&r[1..], &q, &c) {
                        add_into(k, &mut work, t);
                    }
                }
            }
        }
        rem
    }

    fn spoly(&self, a: &Vector, b: &Vector) -> Vector {
        let k = self.field();
        let l = a[0].mon.lcm(&b[0].mon);
        let mut work: BTreeMap<Key, (Monomial, usize, FieldElem)> = BTreeMap::new();
        for t in self.scaled(&a[1..], &l.div(&a[0].mon), &k.one()) {
            add_into(k, &mut work, t);
        }
        for t in self.scaled(&b[1..], &l.div(&b[0].mon), &k.neg(&k.one())) {
            add_into(k, &mut work, t);
        }
        work.into_iter().rev().map(|(key, (mon, comp, coeff))| Term { key, mon, comp, coeff }).collect()
    }

    /// Reduced Gröbner basis, sorted by ascending leading term.
    fn buchberger(&self, input: Vec<Vector>, budget: Budget) -> Result<Vec<Vector>> {
        let mut basis: Vec<Vector> = Vec::new();
        let mut active: Vec<bool> = Vec::new();
        // (degree, lcm key, i, j)
        let mut pairs: BTreeSet<(u32, Key, usize, usize)> = BTreeSet::new();
        let mut todo: Vec<Vector> = input.into_iter().filter(|v| !v.is_empty()).collect();
        todo.sort_by(|a, b| a[0].key.cmp(&b[0].key));
        let mut processed = 0usize;
        let mut queue = todo.into_iter();
        loop {
            let next = match queue.next() {
                Some(v) => Some(v),
                None => match pairs.pop_first() {
                    None => None,
                    Some((deg, _, i, j)) => {
                        processed += 1;
                        if let Some(max) = budget.max_pairs {
                            if processed > max {
                                return Err(Error::BudgetExceeded(format!("more than {max} S-pairs")));
                            }
                        }
                        if let Some(max) = budget.max_degree {
                            if deg > max {
                                return Err(Error::BudgetExceeded(format!("S-pair degree {deg} above {max}")));
                            }
                        }
                        Some(self.spoly(&basis[i], &basis[j]))
                    }
                },
            };
            let Some(v) = next else { break };
            let reducers: Vec<&Vector> = basis.iter().zip(&active).filter(|(_, a)| **a).map(|(b, _)| b).collect();
            let mut h = self.reduce(v, &reducers);
            if h.is_empty() {
                continue;
            }
            self.make_monic(&mut h);
            let hi = basis.len();
            self.update(&basis, &active, &mut pairs, &h, hi);
            for (g, a) in basis.iter().zip(active.iter_mut()) {
                if *a && g[0].comp == h[0].comp && h[0].mon.divides(&g[0].mon) {
                    *a = false;
                }
            }
            basis.push(h);
            active.push(true);
        }
        // interreduce
        let idx: Vec<usize> = (0..basis.len()).filter(|&i| active[i]).collect();
        let mut out = Vec::with_capacity(idx.len());
        for &i in &idx {
            let others: Vec<&Vector> = idx.iter().filter(|&&j| j != i).map(|&j| &basis[j]).collect();
            let lead = basis[i][0].clone();
            let tail = self.reduce(basis[i][1..].to_vec(), &others);
            let mut v = vec![lead];
            v.extend(tail);
            out.push(v);
        }
        out.sort_by(|a, b| a[0].key.cmp(&b[0].key));
        Ok(out)
    }

    /// Gebauer-Möller pair update for a new element `h` with index `hi`.
    fn update(
        &self,
        basis: &[Vector],
        active: &[bool],
        pairs: &mut BTreeSet<(u32, Key, usize, usize)>,
        h: &Vector,
        hi: usize,
    ) {
        let lh = &h[0];
        let coprime = |m: &Monomial| self.is_rank_one() && m.is_coprime(&lh.mon);
        let mut cands: Vec<(usize, Monomial)> = (0..basis.len())
            .filter(|&g| active[g] && basis[g][0].comp == lh.comp)
            .map(|g| (g, basis[g][0].mon.lcm(&lh.mon)))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g, l)) = cands.pop() {
            let lg = &basis[g][0].mon;
            let keep = coprime(lg)
                || (!cands.iter().any(|(_, l2)| l2.divides(&l)) && !kept.iter().any(|(_, l2)| l2.divides(&l)));
            if keep {
                kept.push((g, l));
            }
        }
        pairs.retain(|(_, _, i, j)| {
            let (a, b) = (&basis[*i][0], &basis[*j][0]);
            let l = a.mon.lcm(&b.mon);
            !(lh.comp == a.comp && lh.mon.divides(&l) && a.mon.lcm(&lh.mon) != l && b.mon.lcm(&lh.mon) != l)
        });
        for (g, l) in kept {
            if coprime(&basis[g][0].mon) {
                continue;
            }
            let deg = self.term_degree(&l, lh.comp);
            pairs.insert((deg, self.key(&l, lh.comp), g, hi));
        }
    }
}

fn add_into(k: &Field, work: &mut BTreeMap<Key, (Monomial, usize, FieldElem)>, t: Term) {
    use std::collections::btree_map::Entry;
    match work.entry(t.key) {
        Entry::Vacant(e) => {
            e.insert((t.mon, t.comp, t.coeff));
        }
        Entry::Occupied(mut e) => {
            let s = k.add(&e.get().2, &t.coeff);
            if k.is_zero(&s) {
                e.remove();
            } else {
                e.get_mut().2 = s;
            }
        }
    }
}

fn check_rings(ring: &Ring, polys: &[Poly]) -> Result<()> {
    if polys.iter().any(|p| p.ring() != ring) {
        Err(Error::RingMismatch)
    } else {
        Ok(())
    }
}

/// Reduced Gröbner basis of the ideal generated by `polys`, monic, sorted by
/// ascending leading monomial.
pub fn groebner_basis(ring: &Ring, polys: &[Poly], order: &MonomialOrder, budget: Budget) -> Result<Vec<Poly>> {
    check_rings(ring, polys)?;
    let ctx = Ctx::new(ring, TermOrder::Mono(order.clone()));
    let input = polys.iter().map(|p| ctx.vector(std::slice::from_ref(p))).collect();
    let gb = ctx.buchberger(input, budget)?;
    Ok(gb.iter().map(|v| ctx.polys(v, 1).pop().expect("rank one")).collect())
}

/// Normal form of `f` modulo a Gröbner basis for `order`.
pub fn normal_form(f: &Poly, gb: &[Poly], order: &MonomialOrder) -> Result<Poly> {
    check_rings(f.ring(), gb)?;
    let ring = f.ring();
    let ctx = Ctx::new(ring, TermOrder::Mono(order.clone()));
    let mut red: Vec<Vector> = gb.iter().map(|g| ctx.vector(std::slice::from_ref(g))).filter(|v| !v.is_empty()).collect();
    for v in red.iter_mut() {
        ctx.make_monic(v);
    }
    let refs: Vec<&Vector> = red.iter().collect();
    let r = ctx.reduce(ctx.vector(std::slice::from_ref(f)), &refs);
    Ok(ctx.polys(&r, 1).pop().expect("rank one"))
}

/// Graded free module `⊕ R(-twist_c)` together with the module order used
/// for its submodules.
#[derive(Clone, Debug)]
pub struct ModuleShape {
    pub twists: Vec<u32>,
    /// Components `< split` dominate the remaining ones (elimination).
    pub split: usize,
}

/// Reduced Gröbner basis of the submodule generated by `gens` (each a vector
/// of length `shape.twists.len()`), under the block module order.
pub fn module_groebner(ring: &Ring, shape: &ModuleShape, gens: &[Vec<Poly>], budget: Budget) -> Result<Vec<Vec<Poly>>> {
    let rank = shape.twists.len();
    for g in gens {
        if g.len() != rank {
            return Err(Error::Invariant("vector length differs from module rank".into()));
        }
        check_rings(ring, g)?;
    }
    let ctx = Ctx::new(ring, TermOrder::Module { twists: shape.twists.clone(), split: shape.split });
    let input = gens.iter().map(|g| ctx.vector(g)).collect();
    let gb = ctx.buchberger(input, budget)?;
    Ok(gb.iter().map(|v| ctx.polys(v, rank)).collect())
}

/// Normal form of a vector modulo a module Gröbner basis.
pub fn module_normal_form(ring: &Ring, shape: &ModuleShape, v: &[Poly], gb: &[Vec<Poly>]) -> Vec<Poly> {
    let ctx = Ctx::new(ring, TermOrder::Module { twists: shape.twists.clone(), split: shape.split });
    let mut red: Vec<Vector> = gb.iter().map(|g| ctx.vector(g)).filter(|v| !v.is_empty()).collect();
    for r in red.iter_mut() {
        ctx.make_monic(r);
    }
    let refs: Vec<&Vector> = red.iter().collect();
    let r = ctx.reduce(ctx.vector(v), &refs);
    ctx.polys(&r, v.len())
}

/// Index of the leading component of a nonzero vector under the module order.
pub fn leading_component(ring: &Ring, shape: &ModuleShape, v: &[Poly]) -> Option<usize> {
    let ctx = Ctx::new(ring, TermOrder::Module { twists: shape.twists.clone(), split: shape.split });
    ctx.vector(v).first().map(|t| t.comp)
}

/// Leading monomial of each basis element, grouped by component.
pub fn leading_monomials(ring: &Ring, shape: &ModuleShape, gb: &[Vec<Poly>]) -> Vec<Vec<Monomial>> {
    let ctx = Ctx::new(ring, TermOrder::Module { twists: shape.twists.clone(), split: shape.split });
    let mut out = vec![Vec::new(); shape.twists.len()];
    for g in gb {
        if let Some(t) = ctx.vector(g).first() {
            out[t.comp].push(t.mon.clone());
        }
    }
    out
}

/// Degree of a homogeneous vector in `⊕ R(-twist_c)`; `None` for zero.
pub fn vector_degree(v: &[Poly], twists: &[u32]) -> Result<Option<u32>> {
    let mut deg = None;
    for (p, &t) in v.iter().zip(twists) {
        match p.homogeneous_degree() {
            HomDegree::ZeroPoly => {}
            HomDegree::NotHomogeneous => return Err(Error::NotHomogeneous),
            HomDegree::Homogeneous(d) => {
                let d = d + t;
                if deg.is_some_and(|e| e != d) {
                    return Err(Error::NotHomogeneous);
                }
                deg = Some(d);
            }
        }
    }
    Ok(deg)
}

/// Row-echelon span of vectors, pivots at leading terms.
struct Echelon<'a> {
    ctx: Ctx<'a>,
    rows: BTreeMap<Key, Vector>,
}

impl<'a> Echelon<'a> {
    fn new(ctx: Ctx<'a>) -> Self {
        Echelon { ctx, rows: BTreeMap::new() }
    }

    fn reduce(&self, v: Vector) -> Vector {
        let k = self.ctx.field();
        let mut work: BTreeMap<Key, (Monomial, usize, FieldElem)> =
            v.into_iter().map(|t| (t.key, (t.mon, t.comp, t.coeff))).collect();
        let mut rem = Vec::new();
        while let Some((key, (mon, comp, coeff))) = work.pop_last() {
            match self.rows.get(&key) {
                None => rem.push(Term { key, mon, comp, coeff }),
                Some(row) => {
                    let c = k.neg(&coeff);
                    for t in &row[1..] {
                        add_into(
                            k,
                            &mut work,
                            Term { key: t.key.clone(), mon: t.mon.clone(), comp: t.comp, coeff: k.mul(&t.coeff, &c) },
                        );
                    }
                }
            }
        }
        rem
    }

    /// Adds `v`; returns false if it was already in the span.
    fn insert(&mut self, v: Vector) -> bool {
        let mut r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        self.ctx.make_monic(&mut r);
        self.rows.insert(r[0].key.clone(), r);
        true
    }
}

/// A minimal homogeneous generating set drawn from `gens`, in order of
/// increasing degree (stable within a degree). Vectors live in
/// `⊕ R(-twists_c)` and must be homogeneous.
pub fn minimal_generators(ring: &Ring, twists: &[u32], gens: &[Vec<Poly>]) -> Result<Vec<Vec<Poly>>> {
    let mut graded: Vec<(u32, usize)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        check_rings(ring, g)?;
        if let Some(d) = vector_degree(g, twists)? {
            graded.push((d, i));
        }
    }
    graded.sort();
    let mut kept: Vec<(u32, usize)> = Vec::new();
    let mut at = 0;
    while at < graded.len() {
        let d = graded[at].0;
        let ctx = Ctx::new(ring, TermOrder::Module { twists: twists.to_vec(), split: 0 });
        let mut ech = Echelon::new(ctx);
        for &(e, i) in &kept {
            for m in ring.monomials_of_degree(d - e) {
                let v = ech.ctx.vector(&gens[i]);
                let one = ech.ctx.field().one();
                let w = ech.ctx.scaled(&v, &m, &one).collect::<Vec<_>>();
                let mut w = w;
                w.sort_by(|a, b| b.key.cmp(&a.key));
                ech.insert(w);
            }
        }
        while at < graded.len() && graded[at].0 == d {
            let i = graded[at].1;
            let v = ech.ctx.vector(&gens[i]);
            if ech.insert(v) {
                kept.push((d, i));
            }
            at += 1;
        }
    }
    Ok(kept.into_iter().map(|(_, i)| gens[i].clone()).collect())
}
