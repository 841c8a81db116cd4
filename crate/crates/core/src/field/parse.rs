//! Coefficient strings: integers, fractions, `[c0,c1,..]` extension
//! vectors and rational expressions in the declared parameters.

use num_bigint::BigInt;

use super::{Field, FieldElem, ParamPoly};
use crate::error::{Error, Result};

struct Parser<'a> {
    field: &'a Field,
    chars: Vec<char>,
    pos: usize,
}

pub(super) fn parse_elem(field: &Field, s: &str) -> Result<FieldElem> {
    let mut p = Parser { field, chars: s.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
    if p.chars.is_empty() {
        return Err(Error::Parse("empty coefficient".into()));
    }
    let v = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(v)
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<FieldElem> {
        let k = self.field;
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = k.add(&acc, &self.term()?);
                }
                '-' => {
                    self.pos += 1;
                    acc = k.sub(&acc, &self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElem> {
        let k = self.field;
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.pos += 1;
                    acc = k.mul(&acc, &self.unary()?);
                }
                '/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = k.div(&acc, &d).map_err(|_| Error::Parse("division by zero in coefficient".into()))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<FieldElem> {
        if self.peek() == Some('-') {
            self.pos += 1;
            let v = self.unary()?;
            return Ok(self.field.neg(&v));
        }
        if self.peek() == Some('+') {
            self.pos += 1;
        }
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u64 = e.try_into().map_err(|_| Error::Parse("bad exponent".into()))?;
            return Ok(self.field.pow(&base, e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse("expected integer".into()));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::Parse(format!("bad integer {s}")))
    }

    fn atom(&mut self) -> Result<FieldElem> {
        let k = self.field;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            Some('[') => {
                self.pos += 1;
                let mut digits = Vec::new();
                loop {
                    let neg = if self.peek() == Some('-') {
                        self.pos += 1;
                        true
                    } else {
                        false
                    };
                    let n = self.integer()?;
                    digits.push(if neg { -n } else { n });
                    match self.peek() {
                        Some(',') => self.pos += 1,
                        Some(']') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(Error::Parse("malformed extension vector".into())),
                    }
                }
                ext_vector(k, &digits)
            }
            Some(c) if c.is_ascii_digit() => Ok(k.from_bigint(&self.integer()?)),
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let idx = k
                    .param_names()
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| Error::Parse(format!("unknown parameter {name}")))?;
                Ok(k.param(idx))
            }
            other => Err(Error::Parse(format!("unexpected {other:?}"))),
        }
    }
}

fn ext_vector(k: &Field, digits: &[BigInt]) -> Result<FieldElem> {
    match k.frac_parts() {
        Some((base, n)) => {
            let c = ext_vector(base, digits)?;
            Ok(k.from_param_poly(ParamPoly::constant(base, n, c)))
        }
        None => match k.descriptor() {
            super::FieldDescriptor::ExtField { p, e, .. } => {
                if digits.len() > *e as usize {
                    return Err(Error::Parse("extension vector too long".into()));
                }
                let pb = BigInt::from(*p);
                let mut v = vec![0u64; *e as usize];
                for (slot, d) in v.iter_mut().zip(digits) {
                    let r = ((d % &pb) + &pb) % &pb;
                    *slot = r.try_into().expect("reduced residue");
                }
                Ok(FieldElem::Ext(v))
            }
            _ => Err(Error::Parse("extension vector outside an extension field".into())),
        },
    }
}
