//! Graded free modules, syzygies, minimal free resolutions and Betti tables.

mod betti;

use crate::error::{Error, Result};
use crate::gb::{self, Budget, ModuleShape};
use crate::ideal::{hilbert_numerator, poly_add, poly_shift};
use crate::poly::{HomDegree, Poly, Ring};

pub use betti::BettiTable;

/// `⊕ R(-twist_c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    ring: Ring,
    twists: Vec<u32>,
}

impl FreeModule {
    pub fn new(ring: &Ring, twists: Vec<u32>) -> FreeModule {
        FreeModule { ring: ring.clone(), twists }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn twists(&self) -> &[u32] {
        &self.twists
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }
}

/// Homogeneous map of free modules, stored by columns: `columns[j]` is the
/// image of the `j`-th source generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: FreeModule,
    target: FreeModule,
    columns: Vec<Vec<Poly>>,
}

impl GradedMap {
    pub fn new(source: FreeModule, target: FreeModule, columns: Vec<Vec<Poly>>) -> Result<GradedMap> {
        if source.ring != target.ring || columns.len() != source.rank() {
            return Err(Error::RingMismatch);
        }
        for (j, col) in columns.iter().enumerate() {
            if col.len() != target.rank() {
                return Err(Error::RingMismatch);
            }
            for (i, p) in col.iter().enumerate() {
                if p.ring() != &source.ring {
                    return Err(Error::RingMismatch);
                }
                match p.homogeneous_degree() {
                    HomDegree::ZeroPoly => {}
                    HomDegree::Homogeneous(d) if d as i64 == source.twists[j] as i64 - target.twists[i] as i64 => {}
                    _ => return Err(Error::NotHomogeneous),
                }
            }
        }
        Ok(GradedMap { source, target, columns })
    }

    /// The presentation `⊕ R(-deg f_i) -> R` of `R/(fs)`; zero generators
    /// are dropped.
    pub fn cyclic(ring: &Ring, fs: &[Poly]) -> Result<GradedMap> {
        let mut twists = Vec::new();
        let mut columns = Vec::new();
        for f in fs {
            if f.ring() != ring {
                return Err(Error::RingMismatch);
            }
            match f.homogeneous_degree() {
                HomDegree::ZeroPoly => {}
                HomDegree::NotHomogeneous => return Err(Error::NotHomogeneous),
                HomDegree::Homogeneous(d) => {
                    twists.push(d);
                    columns.push(vec![f.clone()]);
                }
            }
        }
        GradedMap::new(FreeModule::new(ring, twists), FreeModule::new(ring, vec![0]), columns)
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn ring(&self) -> &Ring {
        &self.source.ring
    }

    pub fn columns(&self) -> &[Vec<Poly>] {
        &self.columns
    }

    /// Entry in row `i`, column `j`.
    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.columns[j][i]
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().flatten().all(|p| p.is_zero())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        if other.target != self.source {
            return Err(Error::RingMismatch);
        }
        let zero = Poly::zero(self.ring());
        let columns = other
            .columns
            .iter()
            .map(|col| {
                (0..self.target.rank())
                    .map(|i| {
                        col.iter().enumerate().fold(zero.clone(), |acc, (k, a)| &acc + &(&self.columns[k][i] * a))
                    })
                    .collect()
            })
            .collect();
        GradedMap::new(other.source.clone(), self.target.clone(), columns)
    }

    fn has_unit(&self) -> Option<(usize, usize)> {
        for (j, col) in self.columns.iter().enumerate() {
            for (i, p) in col.iter().enumerate() {
                if !p.is_zero() && p.is_constant() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Same map with every polynomial re-homed into `ring` by `f`.
    pub fn map_entries<F: Fn(&Poly) -> Poly>(&self, ring: &Ring, f: F) -> Result<GradedMap> {
        let columns = self.columns.iter().map(|c| c.iter().map(&f).collect()).collect();
        GradedMap::new(
            FreeModule::new(ring, self.source.twists.clone()),
            FreeModule::new(ring, self.target.twists.clone()),
            columns,
        )
    }
}

/// Kernel of `phi`, presented by a minimal set of homogeneous generators.
pub fn syzygies(phi: &GradedMap) -> Result<GradedMap> {
    syzygies_with(phi, Budget::default())
}

pub fn syzygies_with(phi: &GradedMap, budget: Budget) -> Result<GradedMap> {
    let ring = phi.ring().clone();
    let r = phi.target.rank();
    let m = phi.source.rank();
    let mut twists = phi.target.twists.clone();
    twists.extend_from_slice(&phi.source.twists);
    let shape = ModuleShape { twists, split: r };
    let zero = Poly::zero(&ring);
    let gens: Vec<Vec<Poly>> = phi
        .columns
        .iter()
        .enumerate()
        .map(|(j, col)| {
            let mut v = col.clone();
            v.extend(vec![zero.clone(); m]);
            v[r + j] = Poly::one(&ring);
            v
        })
        .collect();
    let mgb = gb::module_groebner(&ring, &shape, &gens, budget)?;
    let kernel: Vec<Vec<Poly>> =
        mgb.into_iter().filter(|v| v[..r].iter().all(|p| p.is_zero())).map(|mut v| v.split_off(r)).collect();
    let kernel = gb::minimal_generators(&ring, &phi.source.twists, &kernel)?;
    let twists = kernel
        .iter()
        .map(|v| gb::vector_degree(v, &phi.source.twists).map(|d| d.expect("nonzero generator")))
        .collect::<Result<Vec<u32>>>()?;
    GradedMap::new(FreeModule::new(&ring, twists), phi.source.clone(), kernel)
}

/// A graded free resolution `0 <- F0 <- F1 <- ... <- FL <- 0` of the
/// cokernel of `maps[0]`.
#[derive(Clone, Debug)]
pub struct Resolution {
    base: FreeModule,
    maps: Vec<GradedMap>,
    minimal: bool,
}

impl Resolution {
    pub fn maps(&self) -> &[GradedMap] {
        &self.maps
    }

    /// `F_i` for `i = 0..=length`.
    pub fn modules(&self) -> Vec<&FreeModule> {
        let mut out = vec![&self.base];
        out.extend(self.maps.iter().map(|d| &d.source));
        out
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn is_minimal_flagged(&self) -> bool {
        self.minimal
    }

    /// No nonzero constant entry in any map.
    pub fn has_no_unit_entries(&self) -> bool {
        self.maps.iter().all(|d| d.has_unit().is_none())
    }

    /// Consecutive maps compose to zero.
    pub fn is_complex(&self) -> Result<bool> {
        for w in self.maps.windows(2) {
            if !w[0].compose(&w[1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn betti(&self) -> BettiTable {
        let mut t = BettiTable::default();
        for (i, f) in self.modules().into_iter().enumerate() {
            for &j in &f.twists {
                t.add(i, j, 1);
            }
        }
        t
    }
}

/// Removes the unit entry at `(i, j)` of `maps[k]` by a change of basis that
/// splits off `R(-a) -> R(-a)`.
fn prune_unit(base: &mut FreeModule, maps: &mut [GradedMap], k: usize, i: usize, j: usize) -> Result<()> {
    let ring = maps[k].ring().clone();
    let kf = ring.field().clone();
    {
        let d = &mut maps[k];
        let u = d.columns[j][i].coeff(&crate::poly::Monomial::one(ring.nvars()));
        let uinv = kf.inv(&u)?;
        let pivot = d.columns[j].clone();
        for (c, col) in d.columns.iter_mut().enumerate() {
            if c == j || col[i].is_zero() {
                continue;
            }
            let factor = col[i].scale(&uinv);
            for (row, p) in col.iter_mut().enumerate() {
                *p = &*p - &(&factor * &pivot[row]);
            }
        }
        d.columns.remove(j);
        for col in d.columns.iter_mut() {
            col.remove(i);
        }
        d.source.twists.remove(j);
        d.target.twists.remove(i);
    }
    if let Some(next) = maps.get_mut(k + 1) {
        for col in next.columns.iter_mut() {
            col.remove(j);
        }
        next.target.twists.remove(j);
    }
    if k == 0 {
        base.twists.remove(i);
    } else {
        let prev = &mut maps[k - 1];
        prev.columns.remove(i);
        prev.source.twists.remove(i);
    }
    Ok(())
}

fn prune_all(base: &mut FreeModule, maps: &mut [GradedMap], k: usize) -> Result<()> {
    while let Some((i, j)) = maps[k].has_unit() {
        prune_unit(base, maps, k, i, j)?;
    }
    Ok(())
}

/// Minimal graded free resolution of `coker(presentation)`.
pub fn minimal_free_resolution(presentation: &GradedMap) -> Result<Resolution> {
    minimal_free_resolution_with(presentation, Budget::default())
}

pub fn minimal_free_resolution_with(presentation: &GradedMap, budget: Budget) -> Result<Resolution> {
    let ring = presentation.ring().clone();
    let mut base = presentation.target.clone();
    let mut maps = vec![presentation.clone()];
    prune_all(&mut base, &mut maps, 0)?;
    // keep a minimal generating set of the relations
    let d1 = &maps[0];
    let cols = gb::minimal_generators(&ring, &d1.target.twists, &d1.columns)?;
    let twists = cols
        .iter()
        .map(|v| gb::vector_degree(v, &d1.target.twists).map(|d| d.expect("nonzero column")))
        .collect::<Result<Vec<u32>>>()?;
    maps[0] = GradedMap::new(FreeModule::new(&ring, twists), d1.target.clone(), cols)?;
    let bound = ring.nvars() + 1;
    while maps.last().is_some_and(|d| d.source.rank() > 0) {
        if maps.len() > bound {
            return Err(Error::Invariant("resolution longer than the number of variables".into()));
        }
        let next = syzygies_with(maps.last().expect("nonempty"), budget)?;
        maps.push(next);
        let k = maps.len() - 1;
        prune_all(&mut base, &mut maps, k)?;
    }
    while maps.last().is_some_and(|d| d.source.rank() == 0) {
        maps.pop();
    }
    let res = Resolution { base, maps, minimal: true };
    if !res.has_no_unit_entries() {
        return Err(Error::Invariant("unit entry survived minimization".into()));
    }
    Ok(res)
}

pub fn betti(presentation: &GradedMap) -> Result<BettiTable> {
    Ok(minimal_free_resolution(presentation)?.betti())
}

/// Betti table of `R/(fs)`.
pub fn betti_of_quotient(fs: &[Poly]) -> Result<BettiTable> {
    let ring = fs.first().ok_or(Error::ZeroInput)?.ring();
    betti(&GradedMap::cyclic(ring, fs)?)
}

pub fn projective_dimension(presentation: &GradedMap) -> Result<usize> {
    Ok(minimal_free_resolution(presentation)?.length())
}

/// Betti table of the ideal of expressions inside the weighted ring
/// `k[Y1..Ys]`, `deg Yi = g_degrees[i]`.
pub fn betti_over_subalgebra(exprs: &[Poly], g_degrees: &[u32]) -> Result<BettiTable> {
    let ring = exprs.first().ok_or(Error::ZeroInput)?.ring();
    let degs: Vec<u32> = ring.vars().iter().map(|v| v.degree).collect();
    if degs != g_degrees {
        return Err(Error::RingMismatch);
    }
    betti_of_quotient(exprs)
}

/// Numerator of the Hilbert series of `coker(phi)` over `Π(1 - t^deg x_i)`.
pub fn cokernel_hilbert_numerator(phi: &GradedMap) -> Result<Vec<i64>> {
    let ring = phi.ring();
    let shape = ModuleShape { twists: phi.target.twists.clone(), split: 0 };
    let mgb = gb::module_groebner(ring, &shape, &phi.columns, Budget::default())?;
    let lead = gb::leading_monomials(ring, &shape, &mgb);
    let mut num = Vec::new();
    for (c, ms) in lead.iter().enumerate() {
        num = poly_add(&num, &poly_shift(&hilbert_numerator(ring, ms), shape.twists[c]));
    }
    Ok(num)
}

#[cfg(test)]
mod tests;
