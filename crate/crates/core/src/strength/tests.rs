use std::collections::HashSet;

use super::*;
use crate::poly::{random_homogeneous, Ring, RingCtx};
use crate::Field;

fn ring(k: &Field, n: usize) -> Ring {
    RingCtx::standard(k, n)
}

fn p(r: &Ring, s: &str) -> Poly {
    Poly::parse(r, s).unwrap()
}

fn cert(r: &Ring, pairs: &[(&str, &str)]) -> StrengthCertificate {
    StrengthCertificate { pairs: pairs.iter().map(|(g, h)| (p(r, g), p(r, h))).collect() }
}

#[test]
fn verify_examples() {
    let r = ring(&Field::rationals(), 4);
    assert!(verify_certificate(&p(&r, "x1*x2 + x3*x4"), &cert(&r, &[("x1", "x2"), ("x3", "x4")])).unwrap());
    assert!(!verify_certificate(&p(&r, "x1^2"), &cert(&r, &[("x1", "x2")])).unwrap());
    assert!(verify_certificate(&Poly::zero(&r), &StrengthCertificate::default()).unwrap());
    // constant factors are not allowed
    assert!(!verify_certificate(&p(&r, "x1"), &cert(&r, &[("1", "x1")])).unwrap());
    let other = ring(&Field::prime(3).unwrap(), 4);
    assert_eq!(verify_certificate(&p(&other, "x1"), &cert(&r, &[("x1", "x2")])).unwrap_err(), Error::RingMismatch);
}

#[test]
fn split_examples() {
    let r = ring(&Field::rationals(), 4);
    assert_eq!(strength_upper_split(&p(&r, "x1*x2 + x2*x3")).unwrap(), cert(&r, &[("x1", "x2"), ("x2", "x3")]));
    assert_eq!(strength_upper_split(&p(&r, "x1^3")).unwrap(), cert(&r, &[("x1", "x1^2")]));
    assert_eq!(strength_upper_split(&p(&r, "x1*x2 + x3*x4")).unwrap(), cert(&r, &[("x1", "x2"), ("x3", "x4")]));
    assert!(matches!(strength_upper_split(&p(&r, "x1")), Err(Error::DegreeTooLow(_))));
    for seed in 0..30 {
        let f = random_homogeneous(&r, 2 + seed as u32 % 3, seed).unwrap();
        let c = strength_upper_split(&f).unwrap();
        assert!(verify_certificate(&f, &c).unwrap());
        assert!(c.len() <= 4);
    }
}

#[test]
fn quadric_bound_examples() {
    let q = ring(&Field::rationals(), 4);
    let b = quadric_bounds(&p(&q, "x1*x2 + x3*x4")).unwrap();
    assert_eq!(gram_rank(&p(&q, "x1*x2 + x3*x4")).unwrap(), 4);
    assert_eq!((b.lower, b.upper, b.exact), (1, StrengthValue::Finite(1), true));
    assert!(verify_certificate(&p(&q, "x1*x2 + x3*x4"), b.certificate.as_ref().unwrap()).unwrap());
    let f3 = ring(&Field::prime(3).unwrap(), 2);
    let b = quadric_bounds(&p(&f3, "x1^2")).unwrap();
    assert_eq!((b.lower, b.upper, b.exact), (0, StrengthValue::Finite(0), true));
    let f = p(&f3, "x1^2 + x2^2");
    let b = quadric_bounds(&f).unwrap();
    assert_eq!((b.lower, b.upper, b.exact), (0, StrengthValue::Finite(1), false));
    assert_eq!(strength_exact_small(&f).unwrap().value, StrengthValue::Finite(1));
    let f2 = ring(&Field::prime(2).unwrap(), 2);
    assert_eq!(quadric_bounds(&p(&f2, "x1*x2")).unwrap_err(), Error::CharTwo);
    assert_eq!(quadric_bounds(&p(&f3, "x1^3")).unwrap_err(), Error::NotQuadric);
}

#[test]
fn exact_small_examples() {
    let f2 = ring(&Field::prime(2).unwrap(), 4);
    assert_eq!(strength_exact_small(&p(&f2, "x1")).unwrap().value, StrengthValue::Infinity);
    let f = p(&f2, "x1*x2 + x3*x4");
    let r = strength_exact_small(&f).unwrap();
    assert_eq!(r.value, StrengthValue::Finite(1));
    assert!(verify_certificate(&f, r.certificate.as_ref().unwrap()).unwrap());
    assert_eq!(strength_exact_small(&Poly::zero(&f2)).unwrap().value, StrengthValue::Finite(-1));
    let q = ring(&Field::rationals(), 2);
    assert!(matches!(strength_exact_small(&p(&q, "x1^2")), Err(Error::UnsupportedField(_))));
}

#[test]
fn quartics_use_general_search() {
    let f3 = ring(&Field::prime(3).unwrap(), 2);
    // x^4 + 1 = (x^2 + x + 2)(x^2 + 2x + 2) over F3
    let f = p(&f3, "x1^4 + x2^4");
    let r = strength_exact_small(&f).unwrap();
    assert_eq!(r.value, StrengthValue::Finite(0));
    assert!(verify_certificate(&f, r.certificate.as_ref().unwrap()).unwrap());
    let f2 = ring(&Field::prime(2).unwrap(), 3);
    let f = p(&f2, "x1^2*x2^2 + x3^4 + x1*x2*x3^2");
    let r = strength_exact_small(&f).unwrap();
    assert!(verify_certificate(&f, r.certificate.as_ref().unwrap()).unwrap());
    let tight = StrengthOracle::new(1);
    let err = tight.strength(&p(&f2, "x1^3*x2 + x2^3*x3 + x3^3*x1")).unwrap_err();
    assert!(err.is_budget());
}

#[test]
fn collective_examples() {
    let f3 = ring(&Field::prime(3).unwrap(), 4);
    let fs = [p(&f3, "x1*x2"), p(&f3, "x1*x2 + x3*x4")];
    let c = collective_strength(&fs).unwrap();
    assert_eq!(c.value, StrengthValue::Finite(0));
    let (_, w) = c.witness.unwrap();
    assert_eq!(strength_exact_small(&w).unwrap().value, StrengthValue::Finite(0));
    let c = collective_strength(&[p(&f3, "x1"), p(&f3, "x2")]).unwrap();
    assert_eq!(c.value, StrengthValue::Infinity);
    let c = collective_strength(&[p(&f3, "x1*x2"), p(&f3, "2*x1*x2")]).unwrap();
    assert_eq!(c.value, StrengthValue::Finite(-1));
    let (coeffs, w) = c.witness.unwrap();
    assert!(w.is_zero());
    assert!(coeffs.iter().any(|x| !f3.field().is_zero(x)));
}

/// Quadrics in `n` variables over `F_q` as coefficient vectors on the
/// monomials `x_i x_j` (`i <= j`).
struct Quadrics {
    q: u64,
    n: usize,
}

impl Quadrics {
    fn slots(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|i| (i..self.n).map(move |j| (i, j))).collect()
    }

    fn all(&self) -> Vec<Vec<u64>> {
        let len = self.slots().len();
        let mut out = Vec::new();
        for code in 0..self.q.pow(len as u32) {
            let mut c = code;
            out.push((0..len).map(|_| { let d = c % self.q; c /= self.q; d }).collect());
        }
        out
    }

    fn product(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.slots().iter().map(|&(i, j)| if i == j { a[i] * b[i] % self.q } else { (a[i] * b[j] + a[j] * b[i]) % self.q }).collect()
    }

    /// `strength[f]` by iterated sumsets of products of linear forms.
    fn strengths(&self) -> std::collections::HashMap<Vec<u64>, i64> {
        let lin: Vec<Vec<u64>> = (0..self.q.pow(self.n as u32))
            .map(|code| { let mut c = code; (0..self.n).map(|_| { let d = c % self.q; c /= self.q; d }).collect() })
            .collect();
        let mut products: HashSet<Vec<u64>> = HashSet::new();
        for a in &lin {
            for b in &lin {
                products.insert(self.product(a, b));
            }
        }
        let zero = vec![0; self.slots().len()];
        let mut out = std::collections::HashMap::new();
        out.insert(zero.clone(), -1);
        let mut reach: HashSet<Vec<u64>> = [zero].into_iter().collect();
        for k in 0..=self.n as i64 {
            let next: HashSet<Vec<u64>> = reach
                .iter()
                .flat_map(|s| products.iter().map(move |t| s.iter().zip(t).map(|(x, y)| (x + y) % self.q).collect::<Vec<u64>>()))
                .collect();
            for f in &next {
                out.entry(f.clone()).or_insert(k);
            }
            reach = next;
        }
        out
    }

    fn to_poly(&self, r: &Ring, v: &[u64]) -> Poly {
        let k = r.field();
        let mut f = Poly::zero(r);
        for (&(i, j), &c) in self.slots().iter().zip(v) {
            f = &f + &(&Poly::var(r, i) * &Poly::var(r, j)).scale(&k.from_i64(c as i64));
        }
        f
    }
}

#[test]
fn oracle_matches_sumset_enumeration() {
    for (q, n) in [(2u64, 3usize), (3, 3), (5, 2)] {
        let k = Field::prime(q).unwrap();
        let r = ring(&k, n);
        let qs = Quadrics { q, n };
        let table = qs.strengths();
        let oracle = StrengthOracle::default();
        for v in qs.all() {
            let f = qs.to_poly(&r, &v);
            let got = oracle.strength(&f).unwrap();
            assert_eq!(got.value, StrengthValue::Finite(table[&v]), "{f}");
            assert!(verify_certificate(&f, got.certificate.as_ref().unwrap()).unwrap());
        }
    }
}

#[test]
fn collective_strength_is_basis_independent() {
    let k = Field::prime(3).unwrap();
    let r = ring(&k, 3);
    for seed in 0..10u64 {
        let f = random_homogeneous(&r, 2, seed).unwrap();
        let g = random_homogeneous(&r, 2, seed + 50).unwrap();
        let base = collective_strength(&[f.clone(), g.clone()]).unwrap().value;
        // (f, g) -> (2f + g, f + g) is invertible over F3 (det 1)
        let two = k.from_i64(2);
        let swapped = [&f.scale(&two) + &g, &f + &g];
        assert_eq!(collective_strength(&swapped).unwrap().value, base);
        assert_eq!(collective_strength(&[f.scale(&two), g.clone()]).unwrap().value, base);
    }
}
