//! Infix polynomial syntax: `+ - * / ^`, parentheses, integers, variable
//! and parameter names, and `[c0,c1]` extension vectors. Division is only
//! allowed by constants.

use super::{Poly, Ring};
use crate::error::{Error, Result};

struct Parser<'a> {
    ring: &'a Ring,
    chars: Vec<char>,
    pos: usize,
}

pub(super) fn parse_poly(ring: &Ring, s: &str) -> Result<Poly> {
    let mut p = Parser { ring, chars: s.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
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

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                '/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(Error::Parse("division by a non-constant or zero".into()));
                    }
                    let c = d.coeff(&super::Monomial::one(self.ring.nvars()));
                    acc = acc.scale(&self.ring.field().inv(&c)?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        if self.peek() == Some('+') {
            self.pos += 1;
        }
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            let s: String = self.chars[start..self.pos].iter().collect();
            let e: u32 = s.parse().map_err(|_| Error::Parse("bad exponent".into()))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
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
                let start = self.pos;
                while self.peek().is_some_and(|c| c != ']') {
                    self.pos += 1;
                }
                self.pos += 1;
                let s: String = self.chars[start..self.pos.min(self.chars.len())].iter().collect();
                Ok(Poly::constant(self.ring, self.ring.field().parse(&s)?))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                Ok(Poly::constant(self.ring, self.ring.field().parse(&s)?))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if let Some(i) = self.ring.var_index(&name) {
                    return Ok(Poly::var(self.ring, i));
                }
                let k = self.ring.field();
                if let Some(j) = k.param_names().iter().position(|n| *n == name) {
                    return Ok(Poly::constant(self.ring, k.param(j)));
                }
                Err(Error::Parse(format!("unknown name {name}")))
            }
            other => Err(Error::Parse(format!("unexpected {other:?}"))),
        }
    }
}
