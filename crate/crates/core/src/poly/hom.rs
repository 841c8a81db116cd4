use crate::error::{Error, Result};
use crate::field::FieldElem;

use super::{HomDegree, Monomial, Poly, Ring};

/// Degree-preserving algebra map given by the images of the source variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedHom {
    source: Ring,
    target: Ring,
    images: Vec<Poly>,
}

impl GradedHom {
    pub fn new(source: &Ring, target: &Ring, images: Vec<Poly>) -> Result<GradedHom> {
        if source.field() != target.field() || images.len() != source.nvars() {
            return Err(Error::RingMismatch);
        }
        for (i, img) in images.iter().enumerate() {
            if img.ring() != target {
                return Err(Error::RingMismatch);
            }
            match img.homogeneous_degree() {
                HomDegree::ZeroPoly => {}
                HomDegree::Homogeneous(d) if d == source.var_degree(i) => {}
                _ => return Err(Error::NotHomogeneous),
            }
        }
        Ok(GradedHom { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(ring: &Ring) -> GradedHom {
        let images = (0..ring.nvars()).map(|i| Poly::var(ring, i)).collect();
        GradedHom { source: ring.clone(), target: ring.clone(), images }
    }

    /// The map killing every variable past index `n` (on a single ring).
    pub fn kill_after(ring: &Ring, n: usize) -> GradedHom {
        let images = (0..ring.nvars()).map(|i| if i < n { Poly::var(ring, i) } else { Poly::zero(ring) }).collect();
        GradedHom { source: ring.clone(), target: ring.clone(), images }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        if f.ring() != &self.source {
            return Err(Error::RingMismatch);
        }
        let k = self.target.field();
        let mut powers: Vec<Vec<Poly>> = self.images.iter().map(|g| vec![Poly::one(&self.target), g.clone()]).collect();
        let mut out = Poly::zero(&self.target);
        for (m, c) in f.terms() {
            let mut t = Poly::constant(&self.target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &self.images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
                if t.is_zero() {
                    break;
                }
            }
            out = &out + &t;
        }
        debug_assert!(out.terms().all(|(_, c)| !k.is_zero(c)));
        Ok(out)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GradedHom) -> Result<GradedHom> {
        if first.target != self.source {
            return Err(Error::RingMismatch);
        }
        let images = first.images.iter().map(|g| self.apply(g)).collect::<Result<Vec<_>>>()?;
        Ok(GradedHom { source: first.source.clone(), target: self.target.clone(), images })
    }
}

/// Result of [`monicize`].
#[derive(Clone, Debug)]
pub struct Monicization {
    /// `x_i -> x_i - a_i x_pivot` for `i != pivot`.
    pub hom: GradedHom,
    /// `x_i -> x_i + a_i x_pivot`.
    pub inverse: GradedHom,
    /// The shifts `a_i`; the pivot entry is zero.
    pub shifts: Vec<FieldElem>,
    /// Coefficient of `x_pivot^deg f` in `hom(f)`.
    pub unit: FieldElem,
    pub image: Poly,
    /// `unit^-1 * hom(f)`, with coefficient exactly 1 on `x_pivot^deg f`.
    pub monic: Poly,
}

fn shift_hom(ring: &Ring, pivot: usize, shifts: &[FieldElem], sign: bool) -> GradedHom {
    let k = ring.field();
    let xp = Poly::var(ring, pivot);
    let images = (0..ring.nvars())
        .map(|i| {
            if i == pivot {
                return xp.clone();
            }
            let a = if sign { shifts[i].clone() } else { k.neg(&shifts[i]) };
            &Poly::var(ring, i) + &xp.scale(&a)
        })
        .collect();
    GradedHom { source: ring.clone(), target: ring.clone(), images }
}

fn eval(f: &Poly, point: &[FieldElem]) -> FieldElem {
    let k = f.field();
    let mut acc = k.zero();
    for (m, c) in f.terms() {
        let mut t = c.clone();
        for (x, &e) in point.iter().zip(m.exps()) {
            if e > 0 {
                t = k.mul(&t, &k.pow(x, e as u64));
            }
        }
        acc = k.add(&acc, &t);
    }
    acc
}

/// Finds a linear change of coordinates making `f` monic in `x_pivot`.
///
/// Shift tuples `(a_i)` are searched lexicographically over the first
/// `deg f + 1` field elements in canonical order, a set on which a nonzero
/// polynomial of degree `deg f` cannot vanish identically.
pub fn monicize(f: &Poly, pivot: usize) -> Result<Monicization> {
    let ring = f.ring();
    let n = ring.nvars();
    if pivot >= n {
        return Err(Error::IndexOutOfRange(pivot));
    }
    let d = f.degree()?;
    if !ring.is_standard_graded() {
        return Err(Error::NotApplicable("monicize needs every variable in degree 1".into()));
    }
    let k = ring.field();
    if let Some(q) = k.size() {
        if q <= d as u128 {
            return Err(Error::FieldTooSmall { size: q, degree: d });
        }
    }
    let candidates: Vec<FieldElem> = (0..=d as u128).map(|i| k.element_at(i)).collect();
    let others: Vec<usize> = (0..n).filter(|&i| i != pivot).collect();
    let mut digits = vec![0usize; others.len()];
    loop {
        let mut point = vec![k.zero(); n];
        point[pivot] = k.one();
        for (slot, &i) in digits.iter().zip(&others) {
            point[i] = k.neg(&candidates[*slot]);
        }
        if !k.is_zero(&eval(f, &point)) {
            let mut shifts = vec![k.zero(); n];
            for (slot, &i) in digits.iter().zip(&others) {
                shifts[i] = candidates[*slot].clone();
            }
            let hom = shift_hom(ring, pivot, &shifts, false);
            let inverse = shift_hom(ring, pivot, &shifts, true);
            let image = hom.apply(f)?;
            let mut e = vec![0; n];
            e[pivot] = d;
            let unit = image.coeff(&Monomial::new(e));
            debug_assert!(!k.is_zero(&unit));
            let monic = image.scale(&k.inv(&unit)?);
            return Ok(Monicization { hom, inverse, shifts, unit, image, monic });
        }
        // odometer, last coordinate fastest
        let mut j = digits.len();
        loop {
            if j == 0 {
                return Err(Error::Invariant("no monicizing shift found".into()));
            }
            j -= 1;
            digits[j] += 1;
            if digits[j] < candidates.len() {
                break;
            }
            digits[j] = 0;
        }
    }
}
