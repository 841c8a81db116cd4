//! Exact coefficient fields.
//!
//! A [`Field`] is a cheap handle (an `Arc`) built from a serializable
//! [`FieldDescriptor`]. Elements are plain [`FieldElem`] values; all
//! arithmetic goes through the field handle, which knows the modulus,
//! the minimal polynomial or the parameter count.

mod params;
mod parse;

use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use params::{gcd as param_gcd, lcm as param_lcm, ParamPoly, RatFun};

/// Serializable description of a coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldDescriptor {
    Rationals,
    PrimeField {
        p: u64,
    },
    /// `F_p[w]/(min_poly)`, with `min_poly` listed lowest coefficient first.
    ExtField {
        p: u64,
        e: u32,
        min_poly: Vec<u64>,
    },
    RationalFunctions {
        params: Vec<String>,
        base: Box<FieldDescriptor>,
    },
}

impl FieldDescriptor {
    pub fn prime(p: u64) -> Self {
        FieldDescriptor::PrimeField { p }
    }

    pub fn rational_functions(params: &[&str], base: FieldDescriptor) -> Self {
        FieldDescriptor::RationalFunctions {
            params: params.iter().map(|s| s.to_string()).collect(),
            base: Box::new(base),
        }
    }
}

/// Raw field element. Which variant is valid is determined by the field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rational(BigRational),
    Mod(u64),
    Ext(Vec<u64>),
    Frac(Box<RatFun>),
}

#[derive(Debug)]
enum Kind {
    Rationals,
    Prime(u64),
    Ext { p: u64, e: usize, modulus: Vec<u64> },
    Frac { base: Field, nparams: usize },
}

struct Inner {
    desc: FieldDescriptor,
    kind: Kind,
    trace: Option<Mutex<Vec<FieldElem>>>,
}

/// Handle to a coefficient field.
///
/// A traced copy (see [`Field::traced`]) records every element it inverts;
/// the parametric modules use this to collect the coefficients that must
/// stay nonzero under specialization.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({:?})", self.0.desc)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut k: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while k > 0 {
        if k & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        k >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(powmod(a, p - 2, p))
    }
}

// Dense univariate helpers over F_p, lowest coefficient first.
fn fp_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fp_poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let b = fp_trim(b.to_vec());
    let mut r = fp_trim(a.to_vec());
    let lb_inv = invmod(*b.last().expect("nonzero divisor"), p).expect("unit");
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = mulmod(*r.last().unwrap(), lb_inv, p);
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - mulmod(c, bi, p)) % p;
        }
        r = fp_trim(r);
    }
    r
}

fn fp_poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    fp_trim(out)
}

fn fp_poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    fp_trim(out)
}

fn fp_poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let b = fp_trim(b.to_vec());
    let mut r = fp_trim(a.to_vec());
    let mut q = vec![0u64; r.len().saturating_sub(b.len()) + 1];
    let lb_inv = invmod(*b.last().expect("nonzero divisor"), p).expect("unit");
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = mulmod(*r.last().unwrap(), lb_inv, p);
        q[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - mulmod(c, bi, p)) % p;
        }
        r = fp_trim(r);
    }
    (fp_trim(q), r)
}

/// Irreducibility of a monic polynomial of degree at most 4 by exhaustive
/// search for roots and (for degree 4) monic quadratic factors.
fn irreducible_small(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    if d <= 1 {
        return d == 1;
    }
    for x in 0..p {
        let mut v = 0u64;
        for &c in f.iter().rev() {
            v = (mulmod(v, x, p) + c) % p;
        }
        if v == 0 {
            return false;
        }
    }
    if d == 4 {
        for a in 0..p {
            for b in 0..p {
                if fp_poly_rem(f, &[b, a, 1], p).is_empty() {
                    return false;
                }
            }
        }
    }
    true
}

/// Arithmetic operation selector for [`Scalar::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Field {
    pub fn new(desc: FieldDescriptor) -> Result<Field> {
        let kind = match &desc {
            FieldDescriptor::Rationals => Kind::Rationals,
            FieldDescriptor::PrimeField { p } => {
                if !is_prime(*p) || *p >= (1u64 << 62) {
                    return Err(Error::InvalidField(format!("{p} is not a supported prime")));
                }
                Kind::Prime(*p)
            }
            FieldDescriptor::ExtField { p, e, min_poly } => {
                if !is_prime(*p) || *p >= (1u64 << 31) {
                    return Err(Error::InvalidField(format!("{p} is not a supported prime")));
                }
                let e = *e as usize;
                if !(1..=4).contains(&e) {
                    return Err(Error::InvalidField(format!("extension degree {e} outside 1..=4")));
                }
                if min_poly.len() != e + 1 || min_poly[e] != 1 || min_poly.iter().any(|&c| c >= *p) {
                    return Err(Error::InvalidField("minimal polynomial must be monic of degree e with reduced coefficients".into()));
                }
                if !irreducible_small(min_poly, *p) {
                    return Err(Error::InvalidField("minimal polynomial is reducible".into()));
                }
                Kind::Ext { p: *p, e, modulus: min_poly.clone() }
            }
            FieldDescriptor::RationalFunctions { params, base } => {
                if matches!(**base, FieldDescriptor::RationalFunctions { .. }) {
                    return Err(Error::InvalidField("nested rational function fields".into()));
                }
                let mut seen = std::collections::HashSet::new();
                if params.iter().any(|n| !seen.insert(n)) {
                    return Err(Error::InvalidField("duplicate parameter names".into()));
                }
                Kind::Frac { base: Field::new((**base).clone())?, nparams: params.len() }
            }
        };
        Ok(Field(Arc::new(Inner { desc, kind, trace: None })))
    }

    pub fn rationals() -> Field {
        Field::new(FieldDescriptor::Rationals).expect("valid")
    }

    pub fn prime(p: u64) -> Result<Field> {
        Field::new(FieldDescriptor::PrimeField { p })
    }

    /// `F_4 = F_2[w]/(w^2 + w + 1)`.
    pub fn f4() -> Field {
        Field::new(FieldDescriptor::ExtField { p: 2, e: 2, min_poly: vec![1, 1, 1] }).expect("valid")
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0.desc
    }

    /// A copy of this field that records every inverted element.
    pub fn traced(&self) -> Field {
        let kind = match &self.0.kind {
            Kind::Rationals => Kind::Rationals,
            Kind::Prime(p) => Kind::Prime(*p),
            Kind::Ext { p, e, modulus } => Kind::Ext { p: *p, e: *e, modulus: modulus.clone() },
            Kind::Frac { base, nparams } => Kind::Frac { base: base.clone(), nparams: *nparams },
        };
        Field(Arc::new(Inner { desc: self.0.desc.clone(), kind, trace: Some(Mutex::new(Vec::new())) }))
    }

    /// Drains the inversion log of a traced field.
    pub fn take_trace(&self) -> Vec<FieldElem> {
        match &self.0.trace {
            Some(m) => std::mem::take(&mut *m.lock().expect("trace lock")),
            None => Vec::new(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match &self.0.kind {
            Kind::Rationals => 0,
            Kind::Prime(p) => *p,
            Kind::Ext { p, .. } => *p,
            Kind::Frac { base, .. } => base.characteristic(),
        }
    }

    /// Number of elements, `None` for infinite fields.
    pub fn size(&self) -> Option<u128> {
        match &self.0.kind {
            Kind::Prime(p) => Some(*p as u128),
            Kind::Ext { p, e, .. } => Some((*p as u128).pow(*e as u32)),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    pub fn is_perfect(&self) -> bool {
        !matches!(self.0.kind, Kind::Frac { .. }) || self.characteristic() == 0
    }

    /// Base field and parameter count of a rational-function field.
    pub fn frac_parts(&self) -> Option<(&Field, usize)> {
        match &self.0.kind {
            Kind::Frac { base, nparams } => Some((base, *nparams)),
            _ => None,
        }
    }

    pub fn param_names(&self) -> &[String] {
        match &self.0.desc {
            FieldDescriptor::RationalFunctions { params, .. } => params,
            _ => &[],
        }
    }

    pub fn zero(&self) -> FieldElem {
        match &self.0.kind {
            Kind::Rationals => FieldElem::Rational(BigRational::zero()),
            Kind::Prime(_) => FieldElem::Mod(0),
            Kind::Ext { e, .. } => FieldElem::Ext(vec![0; *e]),
            Kind::Frac { base, nparams } => {
                FieldElem::Frac(Box::new(RatFun::from_poly(base, ParamPoly::zero(*nparams))))
            }
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElem {
        match &self.0.kind {
            Kind::Rationals => FieldElem::Rational(BigRational::from_integer(n.clone())),
            Kind::Prime(p) => FieldElem::Mod(n.mod_floor(&BigInt::from(*p)).to_u64().expect("reduced")),
            Kind::Ext { p, e, .. } => {
                let mut v = vec![0; *e];
                v[0] = n.mod_floor(&BigInt::from(*p)).to_u64().expect("reduced");
                FieldElem::Ext(v)
            }
            Kind::Frac { base, nparams } => FieldElem::Frac(Box::new(RatFun::from_poly(
                base,
                ParamPoly::constant(base, *nparams, base.from_bigint(n)),
            ))),
        }
    }

    /// Rational number mapped into the field; fails when the denominator
    /// vanishes in positive characteristic.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElem> {
        let n = self.from_bigint(q.numer());
        let d = self.from_bigint(q.denom());
        self.div(&n, &d)
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Rational(q) => q.is_zero(),
            FieldElem::Mod(x) => *x == 0,
            FieldElem::Ext(v) => v.iter().all(|&x| x == 0),
            FieldElem::Frac(r) => r.num.is_zero(),
        }
    }

    pub fn is_one(&self, a: &FieldElem) -> bool {
        *a == self.one()
    }

    /// Whether `a` is a well-formed element of this field.
    pub fn contains(&self, a: &FieldElem) -> bool {
        match (&self.0.kind, a) {
            (Kind::Rationals, FieldElem::Rational(_)) => true,
            (Kind::Prime(p), FieldElem::Mod(x)) => x < p,
            (Kind::Ext { p, e, .. }, FieldElem::Ext(v)) => v.len() == *e && v.iter().all(|x| x < p),
            (Kind::Frac { nparams, .. }, FieldElem::Frac(r)) => r.num.nvars() == *nparams && r.den.nvars() == *nparams,
            _ => false,
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (&self.0.kind, a, b) {
            (Kind::Rationals, FieldElem::Rational(x), FieldElem::Rational(y)) => FieldElem::Rational(x + y),
            (Kind::Prime(p), FieldElem::Mod(x), FieldElem::Mod(y)) => FieldElem::Mod((x + y) % p),
            (Kind::Ext { p, .. }, FieldElem::Ext(x), FieldElem::Ext(y)) => {
                FieldElem::Ext(x.iter().zip(y).map(|(a, b)| (a + b) % p).collect())
            }
            (Kind::Frac { base, .. }, FieldElem::Frac(x), FieldElem::Frac(y)) => {
                if x.den == y.den {
                    return FieldElem::Frac(Box::new(RatFun::new(base, x.num.add(base, &y.num), x.den.clone())));
                }
                let num = x.num.mul(base, &y.den).add(base, &y.num.mul(base, &x.den));
                FieldElem::Frac(Box::new(RatFun::new(base, num, x.den.mul(base, &y.den))))
            }
            _ => panic!("element does not belong to {:?}", self.0.desc),
        }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        match (&self.0.kind, a) {
            (Kind::Rationals, FieldElem::Rational(x)) => FieldElem::Rational(-x),
            (Kind::Prime(p), FieldElem::Mod(x)) => FieldElem::Mod((p - x) % p),
            (Kind::Ext { p, .. }, FieldElem::Ext(x)) => FieldElem::Ext(x.iter().map(|a| (p - a) % p).collect()),
            (Kind::Frac { base, .. }, FieldElem::Frac(x)) => {
                FieldElem::Frac(Box::new(RatFun { num: x.num.neg(base), den: x.den.clone() }))
            }
            _ => panic!("element does not belong to {:?}", self.0.desc),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (&self.0.kind, a, b) {
            (Kind::Rationals, FieldElem::Rational(x), FieldElem::Rational(y)) => FieldElem::Rational(x * y),
            (Kind::Prime(p), FieldElem::Mod(x), FieldElem::Mod(y)) => FieldElem::Mod(mulmod(*x, *y, *p)),
            (Kind::Ext { p, e, modulus }, FieldElem::Ext(x), FieldElem::Ext(y)) => {
                let prod = fp_poly_mul(&fp_trim(x.clone()), &fp_trim(y.clone()), *p);
                let mut r = fp_poly_rem(&prod, modulus, *p);
                r.resize(*e, 0);
                FieldElem::Ext(r)
            }
            (Kind::Frac { base, .. }, FieldElem::Frac(x), FieldElem::Frac(y)) => {
                if x.num.is_zero() || y.num.is_zero() {
                    return self.zero();
                }
                let num = x.num.mul(base, &y.num);
                let den = x.den.mul(base, &y.den);
                FieldElem::Frac(Box::new(RatFun::new(base, num, den)))
            }
            _ => panic!("element does not belong to {:?}", self.0.desc),
        }
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.0.trace {
            t.lock().expect("trace lock").push(a.clone());
        }
        Ok(match (&self.0.kind, a) {
            (Kind::Rationals, FieldElem::Rational(x)) => FieldElem::Rational(x.recip()),
            (Kind::Prime(p), FieldElem::Mod(x)) => FieldElem::Mod(invmod(*x, *p).expect("nonzero")),
            (Kind::Ext { p, e, modulus }, FieldElem::Ext(x)) => {
                // extended Euclid in F_p[w]
                let (mut r0, mut r1) = (modulus.clone(), fp_trim(x.clone()));
                let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (vec![], vec![1]);
                while !r1.is_empty() {
                    let (q, r) = fp_poly_divrem(&r0, &r1, *p);
                    let s2 = fp_poly_sub(&s0, &fp_poly_mul(&q, &s1, *p), *p);
                    r0 = std::mem::replace(&mut r1, r);
                    s0 = std::mem::replace(&mut s1, s2);
                }
                // r0 is a nonzero constant
                let c = invmod(r0[0], *p).expect("unit gcd");
                let mut v: Vec<u64> = s0.iter().map(|&s| mulmod(s, c, *p)).collect();
                v = fp_poly_rem(&v, modulus, *p);
                v.resize(*e, 0);
                FieldElem::Ext(v)
            }
            (Kind::Frac { base, .. }, FieldElem::Frac(x)) => {
                FieldElem::Frac(Box::new(RatFun::new(base, x.den.clone(), x.num.clone())))
            }
            _ => panic!("element does not belong to {:?}", self.0.desc),
        })
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElem, mut k: u64) -> FieldElem {
        let mut acc = self.one();
        let mut sq = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            k >>= 1;
            if k > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// Multiplies by an integer (the image of `n` in the prime subfield).
    pub fn mul_int(&self, a: &FieldElem, n: &BigInt) -> FieldElem {
        self.mul(a, &self.from_bigint(n))
    }

    /// All elements of a finite field in canonical order; `None` if infinite.
    pub fn elements(&self) -> Option<Vec<FieldElem>> {
        let size = self.size()?;
        Some((0..size).map(|i| self.element_at(i)).collect())
    }

    /// The `i`-th element in canonical order. For finite fields the order is
    /// by base-`p` digits of `i`; for infinite fields it is
    /// `0, 1, -1, 2, -2, ...` (prime subfield), followed by parameter
    /// multiples for rational-function fields over small finite bases.
    pub fn element_at(&self, i: u128) -> FieldElem {
        match &self.0.kind {
            Kind::Prime(_) => FieldElem::Mod(i as u64),
            Kind::Ext { p, e, .. } => {
                let mut v = vec![0u64; *e];
                let mut x = i;
                for c in v.iter_mut() {
                    *c = (x % *p as u128) as u64;
                    x /= *p as u128;
                }
                FieldElem::Ext(v)
            }
            Kind::Rationals => {
                let k = i.div_ceil(2) as i64;
                self.from_i64(if i % 2 == 1 { k } else { -k })
            }
            Kind::Frac { base, nparams } => match base.size() {
                Some(q) if *nparams > 0 => {
                    // base-q digits of i as the coefficients of a polynomial in t_1
                    let mut x = i;
                    let mut k = 0u32;
                    let mut terms = Vec::new();
                    while x > 0 {
                        let mut ex = vec![0u32; *nparams];
                        ex[0] = k;
                        terms.push((ex, base.element_at(x % q)));
                        x /= q;
                        k += 1;
                    }
                    self.from_param_poly(ParamPoly::from_terms(base, *nparams, terms))
                }
                _ => {
                    let c = base.element_at(i);
                    FieldElem::Frac(Box::new(RatFun::from_poly(base, ParamPoly::constant(base, *nparams, c))))
                }
            },
        }
    }

    /// Position of `a` in the canonical order of a finite field.
    pub fn element_index(&self, a: &FieldElem) -> Option<u128> {
        match (&self.0.kind, a) {
            (Kind::Prime(_), FieldElem::Mod(x)) => Some(*x as u128),
            (Kind::Ext { p, .. }, FieldElem::Ext(v)) => {
                Some(v.iter().rev().fold(0u128, |acc, &c| acc * *p as u128 + c as u128))
            }
            _ => None,
        }
    }

    /// The unique `b` with `b^p = a`.
    pub fn pth_root(&self, a: &FieldElem) -> Result<FieldElem> {
        match (&self.0.kind, a) {
            (Kind::Rationals, _) => Err(Error::CharZero),
            (Kind::Prime(_), FieldElem::Mod(_)) => Ok(a.clone()),
            (Kind::Ext { p, e, .. }, FieldElem::Ext(_)) => {
                // Frobenius has order e, so its inverse is x -> x^(p^(e-1)).
                Ok(self.pow(a, p.pow(*e as u32 - 1)))
            }
            (Kind::Frac { base, nparams }, FieldElem::Frac(r)) => {
                let p = base.characteristic();
                if p == 0 {
                    return Err(Error::CharZero);
                }
                let root = |poly: &ParamPoly| -> Result<ParamPoly> {
                    let mut terms = Vec::new();
                    for (ex, c) in poly.terms() {
                        if ex.iter().any(|&k| k as u64 % p != 0) {
                            return Err(Error::NotAPthPower);
                        }
                        terms.push((ex.iter().map(|&k| (k as u64 / p) as u32).collect(), base.pth_root(c)?));
                    }
                    Ok(ParamPoly::from_terms(base, *nparams, terms))
                };
                let num = root(&r.num)?;
                let den = root(&r.den)?;
                Ok(FieldElem::Frac(Box::new(RatFun::new(base, num, den))))
            }
            _ => panic!("element does not belong to {:?}", self.0.desc),
        }
    }

    /// A square root of `a` when one exists in the field.
    pub fn sqrt(&self, a: &FieldElem) -> Option<FieldElem> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        match (&self.0.kind, a) {
            (Kind::Rationals, FieldElem::Rational(q)) => {
                if q.is_negative() {
                    return None;
                }
                let n = q.numer().sqrt();
                let d = q.denom().sqrt();
                if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
                    Some(FieldElem::Rational(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            (Kind::Prime(p), FieldElem::Mod(x)) => {
                if *p == 2 {
                    return Some(a.clone());
                }
                if powmod(*x, (p - 1) / 2, *p) != 1 {
                    return None;
                }
                if *p < 1 << 20 {
                    (1..*p).find(|y| mulmod(*y, *y, *p) == *x).map(FieldElem::Mod)
                } else {
                    tonelli_shanks(*x, *p).map(FieldElem::Mod)
                }
            }
            (Kind::Ext { .. }, _) => {
                let size = self.size().expect("finite");
                (0..size).map(|i| self.element_at(i)).find(|y| self.mul(y, y) == *a)
            }
            (Kind::Frac { .. }, _) => None,
            _ => panic!("element does not belong to {:?}", self.0.desc),
        }
    }

    pub fn parse(&self, s: &str) -> Result<FieldElem> {
        parse::parse_elem(self, s)
    }

    pub fn format(&self, a: &FieldElem) -> String {
        match a {
            FieldElem::Rational(q) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            FieldElem::Mod(x) => x.to_string(),
            FieldElem::Ext(v) => {
                let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                format!("[{}]", parts.join(","))
            }
            FieldElem::Frac(r) => {
                let (base, _) = self.frac_parts().expect("rational function field");
                let names = self.param_names();
                let num = r.num.format(base, names);
                if r.den.is_constant() {
                    num
                } else {
                    format!("({})/({})", num, r.den.format(base, names))
                }
            }
        }
    }

    /// Rational-function element built from a polynomial in the parameters.
    pub fn from_param_poly(&self, p: ParamPoly) -> FieldElem {
        let (base, _) = self.frac_parts().expect("rational function field");
        FieldElem::Frac(Box::new(RatFun::from_poly(base, p)))
    }

    pub fn param(&self, i: usize) -> FieldElem {
        let (base, n) = self.frac_parts().expect("rational function field");
        self.from_param_poly(ParamPoly::var(base, n, i))
    }
}

fn tonelli_shanks(n: u64, p: u64) -> Option<u64> {
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| powmod(z, (p - 1) / 2, p) == p - 1)?;
    let (mut m, mut c, mut t, mut r) = (s, powmod(z, q, p), powmod(n, q, p), powmod(n, q.div_ceil(2), p));
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulmod(tt, tt, p);
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    Some(r)
}

/// Clears denominators of rational-function elements. Returns the scaled
/// (denominator-free) elements and the common multiplier `g`, the monic
/// least common multiple of the denominators.
pub fn clear_denominators(field: &Field, elems: &[FieldElem]) -> Result<(Vec<ParamPoly>, ParamPoly)> {
    let (base, n) = field
        .frac_parts()
        .ok_or_else(|| Error::NotApplicable("clear_denominators needs a rational function field".into()))?;
    let mut g = ParamPoly::one(base, n);
    for a in elems {
        match a {
            FieldElem::Frac(r) if field.contains(a) => g = param_lcm(base, &g, &r.den),
            _ => return Err(Error::DescriptorMismatch),
        }
    }
    let out = elems
        .iter()
        .map(|a| match a {
            FieldElem::Frac(r) => {
                let cof = g.div_exact(base, &r.den).expect("lcm is a multiple");
                r.num.mul(base, &cof)
            }
            _ => unreachable!(),
        })
        .collect();
    Ok((out, g))
}

/// A field element together with its field, for checked arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    pub field: Field,
    pub value: FieldElem,
}

impl Scalar {
    pub fn new(field: &Field, value: FieldElem) -> Result<Scalar> {
        if !field.contains(&value) {
            return Err(Error::DescriptorMismatch);
        }
        Ok(Scalar { field: field.clone(), value })
    }

    pub fn parse(field: &Field, s: &str) -> Result<Scalar> {
        Ok(Scalar { field: field.clone(), value: field.parse(s)? })
    }

    pub fn arith(&self, other: &Scalar, op: ArithOp) -> Result<Scalar> {
        if self.field != other.field {
            return Err(Error::DescriptorMismatch);
        }
        let k = &self.field;
        let value = match op {
            ArithOp::Add => k.add(&self.value, &other.value),
            ArithOp::Sub => k.sub(&self.value, &other.value),
            ArithOp::Mul => k.mul(&self.value, &other.value),
            ArithOp::Div => k.div(&self.value, &other.value)?,
        };
        Ok(Scalar { field: k.clone(), value })
    }

    pub fn pth_root(&self) -> Result<Scalar> {
        Ok(Scalar { field: self.field.clone(), value: self.field.pth_root(&self.value)? })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(&self.value))
    }
}

#[cfg(test)]
mod tests;
