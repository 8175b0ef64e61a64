//! Sparse multivariate polynomials over any [`Ring`].

mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::ring_tower::Ring;

pub use parse::{parse_poly, parse_poly_named, parse_scalar, ParseError};

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then the exponent of `x0`, then `x1`, ...
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    /// `(k, k, ..., k)`.
    pub fn diagonal(nvars: usize, k: u16) -> Self {
        Monomial(vec![k; nvars])
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Panics on exponent overflow rather than wrapping.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow (limit 65535)"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// Componentwise `<=`.
    pub fn within(&self, cap: &Monomial) -> bool {
        self.divides(cap)
    }

    pub fn format_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable count mismatch: {0} vs {1}")]
    Arity(usize, usize),
    #[error("coefficient rings differ: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("variable index {0} out of range for {1} variables")]
    VariableIndex(usize, usize),
}

/// A polynomial stored as a map from exponent vectors to nonzero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SparsePoly<R: Ring> {
    ring: R,
    nvars: usize,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: Ring> SparsePoly<R> {
    pub fn zero(ring: &R, nvars: usize) -> Self {
        Self { ring: ring.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(ring: &R, nvars: usize, c: R::Elem) -> Self {
        Self::from_terms(ring, nvars, [(Monomial::one(nvars), c)])
    }

    pub fn one(ring: &R, nvars: usize) -> Self {
        Self::constant(ring, nvars, ring.one())
    }

    pub fn var(ring: &R, nvars: usize, i: usize) -> Self {
        Self::from_terms(ring, nvars, [(Monomial::var(nvars, i), ring.one())])
    }

    pub fn monomial(ring: &R, m: Monomial, c: R::Elem) -> Self {
        let nvars = m.nvars();
        Self::from_terms(ring, nvars, [(m, c)])
    }

    /// Sums repeated monomials and drops zero coefficients.
    pub fn from_terms(ring: &R, nvars: usize, terms: impl IntoIterator<Item = (Monomial, R::Elem)>) -> Self {
        let mut acc: HashMap<Monomial, R::Elem> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            match acc.get_mut(&m) {
                Some(x) => *x = ring.add(x, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(ring, nvars, acc)
    }

    fn from_map(ring: &R, nvars: usize, acc: HashMap<Monomial, R::Elem>) -> Self {
        let terms = acc.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect();
        Self { ring: ring.clone(), nvars, terms }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> R::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Every term has total degree `d`.
    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    fn check_compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::Arity(self.nvars, other.nvars));
        }
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch(self.ring.name(), other.ring.name()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let sum = match terms.get(m) {
                Some(x) => self.ring.add(x, c),
                None => c.clone(),
            };
            if self.ring.is_zero(&sum) {
                terms.remove(m);
            } else {
                terms.insert(m.clone(), sum);
            }
        }
        Ok(Self { ring: self.ring.clone(), nvars: self.nvars, terms })
    }

    /// Panics on arity or ring mismatch; see [`Self::checked_add`].
    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("incompatible polynomials")
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), self.ring.neg(c))).collect();
        Self { ring: self.ring.clone(), nvars: self.nvars, terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        Self::from_terms(&self.ring, self.nvars, self.terms.iter().map(|(m, x)| (m.clone(), self.ring.mul(x, c))))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        Ok(self.mul_filtered(other, |_| true))
    }

    /// Panics on arity or ring mismatch; see [`Self::checked_mul`].
    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("incompatible polynomials")
    }

    /// Product restricted to monomials `<= cap` componentwise.
    pub fn mul_capped(&self, other: &Self, cap: &Monomial) -> Self {
        self.mul_filtered(other, |m| m.within(cap))
    }

    /// Product truncated to total degree `<= max_degree`.
    pub fn mul_truncated(&self, other: &Self, max_degree: u32) -> Self {
        self.mul_filtered(other, |m| m.degree() <= max_degree)
    }

    fn mul_filtered(&self, other: &Self, keep: impl Fn(&Monomial) -> bool) -> Self {
        assert_eq!(self.nvars, other.nvars, "arity mismatch");
        let ring = &self.ring;
        let mut acc: HashMap<Monomial, R::Elem> = HashMap::with_capacity(self.len().max(other.len()));
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let m = ma.mul(mb);
                if !keep(&m) {
                    continue;
                }
                let prod = ring.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(x) => *x = ring.add(x, &prod),
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        Self::from_map(ring, self.nvars, acc)
    }

    pub fn pow(&self, m: u32) -> Self {
        self.pow_with(m, |a, b| a.mul(b))
    }

    /// `f^m` correct on every monomial `<= cap` componentwise.
    ///
    /// Exponents only grow under multiplication, so a partial product that
    /// already exceeds `cap` can never contribute below it and is dropped at
    /// every squaring step.
    pub fn pow_bounded(&self, m: u32, cap: &Monomial) -> Self {
        assert_eq!(cap.nvars(), self.nvars, "cap arity");
        let base = Self::from_terms(
            &self.ring,
            self.nvars,
            self.terms.iter().filter(|(k, _)| k.within(cap)).map(|(k, c)| (k.clone(), c.clone())),
        );
        base.pow_with(m, |a, b| a.mul_capped(b, cap))
    }

    /// `f^m` truncated to total degree `<= max_degree`.
    pub fn pow_truncated(&self, m: u32, max_degree: u32) -> Self {
        self.pow_with(m, |a, b| a.mul_truncated(b, max_degree))
    }

    fn pow_with(&self, mut m: u32, mul: impl Fn(&Self, &Self) -> Self) -> Self {
        let mut acc = Self::one(&self.ring, self.nvars);
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                acc = mul(&acc, &base);
            }
            m >>= 1;
            if m > 0 {
                base = mul(&base, &base);
            }
        }
        acc
    }

    /// Formal partial derivative `d/dx_i`.
    pub fn partial(&self, i: usize) -> Result<Self, PolyError> {
        if i >= self.nvars {
            return Err(PolyError::VariableIndex(i, self.nvars));
        }
        let terms = self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e[i];
            e[i] -= 1;
            (Monomial(e), self.ring.mul(&self.ring.from_i64(k as i64), c))
        });
        Ok(Self::from_terms(&self.ring, self.nvars, terms))
    }

    pub fn evaluate(&self, point: &[R::Elem]) -> Result<R::Elem, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::Arity(self.nvars, point.len()));
        }
        let ring = &self.ring;
        let mut acc = ring.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = ring.mul(&t, &ring.pow(x, e as u64));
                }
            }
            acc = ring.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Replace `x_i` by the constant `value`, keeping the variable count.
    pub fn specialize(&self, i: usize, value: &R::Elem) -> Self {
        let ring = &self.ring;
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.0.clone();
            let k = std::mem::replace(&mut e[i], 0);
            (Monomial(e), ring.mul(c, &ring.pow(value, k as u64)))
        });
        Self::from_terms(ring, self.nvars, terms)
    }

    /// Apply a coefficient homomorphism into another ring.
    pub fn map_coeffs<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> SparsePoly<S> {
        SparsePoly::from_terms(target, self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Keep only the terms for which `keep` holds.
    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect();
        Self { ring: self.ring.clone(), nvars: self.nvars, terms }
    }

    pub fn default_names(&self) -> Vec<String> {
        (0..self.nvars).map(|i| format!("x{i}")).collect()
    }

    pub fn format_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let cs = self.ring.format(c);
            let is_const = m.degree() == 0;
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let body = if body.contains(['+', '-']) { format!("({body})") } else { body };
            let term = match (is_const, body.as_str()) {
                (true, _) => body.clone(),
                (false, "1") => m.format_with(names),
                (false, _) => format!("{body}*{}", m.format_with(names)),
            };
            match (k, neg) {
                (0, true) => out.push_str(&format!("-{term}")),
                (0, false) => out.push_str(&term),
                (_, true) => out.push_str(&format!(" - {term}")),
                (_, false) => out.push_str(&format!(" + {term}")),
            }
        }
        out
    }
}

impl<R: Ring> fmt::Display for SparsePoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&self.default_names()))
    }
}
