//! Polynomial literals such as `3*x0^2*x1 - x3` or `(x+y+A*z)^2`.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' digits)?
//! atom   := digits | name | '(' expr ')' | '-' factor
//! ```
//!
//! A `name` is a variable, or else a constant of the coefficient ring (`A`,
//! `B`, `eps`, ...).

use num_bigint::BigInt;
use thiserror::Error;

use super::SparsePoly;
use crate::ring_tower::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub msg: String,
}

/// Parse with variables named `x0 .. x{nvars-1}`.
pub fn parse_poly<R: Ring>(ring: &R, src: &str, nvars: usize) -> Result<SparsePoly<R>, ParseError> {
    let names: Vec<String> = (0..nvars).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    parse_poly_named(ring, src, &refs)
}

/// Parse with the given variable names, in index order.
pub fn parse_poly_named<R: Ring>(ring: &R, src: &str, names: &[&str]) -> Result<SparsePoly<R>, ParseError> {
    let mut p = Parser { ring, src: src.as_bytes(), pos: 0, names };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err(format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    Ok(out)
}

/// Parse a ring element written in polynomial literal syntax without variables.
pub fn parse_scalar<R: Ring>(ring: &R, src: &str) -> Result<R::Elem, ParseError> {
    let f = parse_poly_named(ring, src, &[])?;
    Ok(f.coeff(&super::Monomial::one(0)))
}

struct Parser<'a, R: Ring> {
    ring: &'a R,
    src: &'a [u8],
    pos: usize,
    names: &'a [&'a str],
}

impl<R: Ring> Parser<'_, R> {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<SparsePoly<R>, ParseError> {
        let mut acc = if self.eat(b'-') {
            self.term()?.neg()
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SparsePoly<R>, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SparsePoly<R>, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.err("expected exponent after '^'"));
            }
            let e: u32 = digits.parse().map_err(|_| ParseError { pos: start, msg: "exponent too large".into() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<SparsePoly<R>, ParseError> {
        let n = self.nvars();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let v: BigInt = d.parse().expect("ascii digits");
                Ok(SparsePoly::constant(self.ring, n, self.ring.from_bigint(&v)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if let Some(i) = self.names.iter().position(|v| *v == name) {
                    return Ok(SparsePoly::var(self.ring, n, i));
                }
                match self.ring.constant(name) {
                    Some(c) => Ok(SparsePoly::constant(self.ring, n, c)),
                    None => Err(ParseError { pos: start, msg: format!("unknown name '{name}' for ring {}", self.ring.name()) }),
                }
            }
            Some(c) => Err(self.err(format!("unexpected '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
