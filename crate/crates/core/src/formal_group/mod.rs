//! One-dimensional formal groups given by their logarithm
//! `l(t) = sum beta_m t^m / m`.

mod series;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::multipoly::{Monomial, SparsePoly};
use crate::ring_tower::{is_prime, Integers, PrimeField, Rationals, Ring};

pub use series::{compose2, reversion, UniSeries};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormalGroupError {
    #[error("a logarithm needs beta_1 = 1")]
    NotNormalized,
    #[error("truncation {have} is too short, need at least {needed}")]
    TruncationTooShort { needed: usize, have: usize },
    #[error("coefficient {coefficient} of {monomial} is not {target}-integral")]
    NonIntegral { coefficient: String, monomial: String, target: String },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("formal group axiom fails: {0}")]
    Axiom(String),
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

/// `l(t) = sum_{m <= T} beta_m t^m / m` with `beta_1 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogSeries<R: Ring> {
    ring: R,
    betas: Vec<R::Elem>,
}

impl<R: Ring> LogSeries<R> {
    pub fn new(ring: &R, betas: Vec<R::Elem>) -> Result<Self, FormalGroupError> {
        match betas.first() {
            Some(b) if ring.is_one(b) => Ok(Self { ring: ring.clone(), betas }),
            _ => Err(FormalGroupError::NotNormalized),
        }
    }

    /// All `beta_m = 1`: `l = -log(1 - t)`.
    pub fn all_ones(ring: &R, t: usize) -> Self {
        Self { ring: ring.clone(), betas: vec![ring.one(); t] }
    }

    /// `l = t`.
    pub fn additive(ring: &R, t: usize) -> Self {
        let mut betas = vec![ring.zero(); t];
        betas[0] = ring.one();
        Self { ring: ring.clone(), betas }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// `T`, the largest index carried.
    pub fn truncation(&self) -> usize {
        self.betas.len()
    }

    /// `beta_m`, 1-based.
    pub fn beta(&self, m: usize) -> &R::Elem {
        &self.betas[m - 1]
    }

    pub fn betas(&self) -> &[R::Elem] {
        &self.betas
    }
}

impl LogSeries<Rationals> {
    pub fn from_integers(l: &LogSeries<Integers>) -> Self {
        Self { ring: Rationals, betas: l.betas.iter().map(|b| BigRational::from_integer(b.clone())).collect() }
    }

    /// Coefficients `beta_m / m` of `l` as a series, index = degree.
    pub fn series(&self) -> UniSeries {
        let mut c = vec![BigRational::zero()];
        c.extend(self.betas.iter().enumerate().map(|(i, b)| b / BigInt::from(i + 1)));
        UniSeries::new(c)
    }
}

/// `beta'_n = beta_{np}` for `n <= T/p`: the logarithm of the Frobenius image.
/// The first entry is `beta_p`, the scalar by which Frobenius acts on the
/// tangent space.
pub fn frob_on_log<R: Ring>(l: &LogSeries<R>, p: u64) -> Result<Vec<R::Elem>, FormalGroupError> {
    let p = p as usize;
    if l.truncation() < p {
        return Err(FormalGroupError::TruncationTooShort { needed: p, have: l.truncation() });
    }
    Ok((1..=l.truncation() / p).map(|n| l.beta(n * p).clone()).collect())
}

/// A formal group law `F(x, y)` known up to total degree `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fgl<R: Ring> {
    law: SparsePoly<R>,
    order: u32,
}

impl<R: Ring> Fgl<R> {
    pub fn new(law: SparsePoly<R>, order: u32) -> Self {
        assert_eq!(law.nvars(), 2, "a formal group law is bivariate");
        Self { law: law.filter_terms(|m| m.degree() <= order), order }
    }

    pub fn law(&self) -> &SparsePoly<R> {
        &self.law
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficient of `x^i y^j`.
    pub fn coeff(&self, i: u16, j: u16) -> R::Elem {
        self.law.coeff(&Monomial::new(vec![i, j]))
    }

    /// Unit, commutativity and associativity up to `order`.
    pub fn check_axioms(&self) -> Result<(), FormalGroupError> {
        let ring = self.law.ring();
        let x = SparsePoly::var(ring, 1, 0);
        let zero = SparsePoly::zero(ring, 1);
        if compose2(&self.law, &x, &zero, self.order) != x || compose2(&self.law, &zero, &x, self.order) != x {
            return Err(FormalGroupError::Axiom("F(x, 0) = F(0, x) = x".into()));
        }
        let (x2, y2) = (SparsePoly::var(ring, 2, 0), SparsePoly::var(ring, 2, 1));
        if compose2(&self.law, &y2, &x2, self.order) != self.law {
            return Err(FormalGroupError::Axiom("F(x, y) = F(y, x)".into()));
        }
        let v: Vec<_> = (0..3).map(|i| SparsePoly::var(ring, 3, i)).collect();
        let xy = compose2(&self.law, &v[0], &v[1], self.order);
        let yz = compose2(&self.law, &v[1], &v[2], self.order);
        if compose2(&self.law, &xy, &v[2], self.order) != compose2(&self.law, &v[0], &yz, self.order) {
            return Err(FormalGroupError::Axiom("F(F(x, y), z) = F(x, F(y, z))".into()));
        }
        Ok(())
    }
}

/// `F(x, y) = l^{-1}(l(x) + l(y))` over `Q`, up to total degree `order`.
pub fn law_from_log(l: &LogSeries<Rationals>, order: u32) -> Result<Fgl<Rationals>, FormalGroupError> {
    let t = order as usize;
    if l.truncation() < t {
        return Err(FormalGroupError::TruncationTooShort { needed: t, have: l.truncation() });
    }
    let log = l.series().truncate(t);
    let inv = reversion(&log, t);
    let q = Rationals;
    let sum = log.bivariate(&q, 0).add(&log.bivariate(&q, 1));
    let law = inv.compose_into(&sum, order);
    Ok(Fgl::new(law, order))
}

/// Recover `beta_1..beta_order` from the invariant differential `dx / F_y(x, 0)`.
pub fn log_from_law(g: &Fgl<Rationals>) -> LogSeries<Rationals> {
    let t = g.order as usize;
    // F_y(x, 0) = sum_i c_{i,1} x^i
    let fy = UniSeries::new((0..t).map(|i| g.coeff(i as u16, 1)).collect());
    let omega = fy.inverse(t);
    let betas = (0..t).map(|i| omega.coeff(i)).collect();
    LogSeries { ring: Rationals, betas }
}

fn reduce_coeff(c: &BigRational, p: u64) -> Option<u64> {
    Rationals.residue(c, p)
}

/// The law over `Z`, failing on the first non-integral coefficient.
pub fn integral_law(g: &Fgl<Rationals>) -> Result<Fgl<Integers>, FormalGroupError> {
    for (m, c) in g.law.terms() {
        if !c.is_integer() {
            return Err(non_integral(c, m, "Z"));
        }
    }
    Ok(Fgl::new(g.law.map_coeffs(&Integers, |c| c.to_integer()), g.order))
}

/// Reduction mod `p`, requiring every coefficient to be `p`-integral.
pub fn reduce_law(g: &Fgl<Rationals>, p: u64) -> Result<Fgl<PrimeField>, FormalGroupError> {
    let field = PrimeField::try_new(p).ok_or(FormalGroupError::NotPrime(p))?;
    for (m, c) in g.law.terms() {
        if reduce_coeff(c, p).is_none() {
            return Err(non_integral(c, m, &format!("{p}")));
        }
    }
    Ok(Fgl::new(g.law.map_coeffs(&field, |c| reduce_coeff(c, p).expect("checked")), g.order))
}

fn non_integral(c: &BigRational, m: &Monomial, target: &str) -> FormalGroupError {
    FormalGroupError::NonIntegral {
        coefficient: c.to_string(),
        monomial: m.format_with(&["x".into(), "y".into()]),
        target: target.into(),
    }
}

/// `[p](t) = F(t, F(t, ...))` with `p` summands, over `F_p`, up to `t^order`.
/// Entry `k` is the coefficient of `t^k`.
pub fn p_series(g: &Fgl<PrimeField>) -> Result<Vec<u64>, FormalGroupError> {
    let field = *g.law.ring();
    let p = field.modulus();
    if (g.order as u64) < p {
        return Err(FormalGroupError::TruncationTooShort { needed: p as usize, have: g.order as usize });
    }
    let t = SparsePoly::var(&field, 1, 0);
    let mut acc = t.clone();
    for _ in 1..p {
        acc = compose2(&g.law, &t, &acc, g.order);
    }
    Ok((0..=g.order).map(|k| acc.coeff(&Monomial::new(vec![k as u16]))).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Height {
    Finite(u32),
    /// No nonzero coefficient up to `t^(p^(h-1))`: height at least `h`,
    /// possibly infinite.
    AtLeast(u32),
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(h) => write!(f, "{h}"),
            Height::AtLeast(h) => write!(f, ">= {h} (infinity candidate)"),
        }
    }
}

/// Full record of a height computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightReport {
    pub height: Height,
    pub p: u64,
    pub h_max: u32,
    /// `[p](t) mod p`, index = degree.
    pub p_series: Vec<u64>,
    /// Whether `[p](t)` was also recomputed from the bivariate law.
    pub cross_checked: bool,
}

/// Largest order at which [`height`] rebuilds the bivariate law to
/// recompute `[p](t)`; the law has about `order^2 / 2` terms.
pub const LAW_CROSS_CHECK_LIMIT: usize = 32;

/// Height of the formal group with logarithm `l` at `p`, searched up to `h_max`.
///
/// `[p](t)` is computed as `l^{-1}(p l(t))` and, up to
/// [`LAW_CROSS_CHECK_LIMIT`], again from the reduced law; the two must agree.
pub fn height(l: &LogSeries<Rationals>, p: u64, h_max: u32) -> Result<HeightReport, FormalGroupError> {
    if !is_prime(p) {
        return Err(FormalGroupError::NotPrime(p));
    }
    let top = p.saturating_pow(h_max) as usize;
    if l.truncation() < top.saturating_add(1) {
        return Err(FormalGroupError::TruncationTooShort { needed: top.saturating_add(1), have: l.truncation() });
    }
    let log = l.series().truncate(top);
    let scaled = log.scale(&BigRational::from_integer(BigInt::from(p)));
    let direct = reversion(&log, top).compose(&scaled, top);
    let via_log: Vec<u64> = (0..=top)
        .map(|k| {
            reduce_coeff(&direct.coeff(k), p)
                .ok_or_else(|| FormalGroupError::CrossCheck(format!("l^-1(p l(t)) is not {p}-integral at t^{k}")))
        })
        .collect::<Result<_, _>>()?;

    let cross_checked = top <= LAW_CROSS_CHECK_LIMIT;
    if cross_checked {
        let reduced = reduce_law(&law_from_log(l, top as u32)?, p)?;
        if p_series(&reduced)? != via_log {
            return Err(FormalGroupError::CrossCheck("[p](t) from the law and from the logarithm differ".into()));
        }
    }

    let first = via_log.iter().position(|&c| c != 0);
    let height = match first {
        None => Height::AtLeast(h_max + 1),
        Some(k) => {
            let h = (1..=h_max).find(|&h| p.pow(h) as usize == k).ok_or_else(|| {
                FormalGroupError::CrossCheck(format!("leading term of [p](t) is t^{k}, not a power of {p}"))
            })?;
            Height::Finite(h)
        }
    };
    Ok(HeightReport { height, p, h_max, p_series: via_log, cross_checked })
}

/// The `[p]`-series of the multiplicative law `x + y - xy` is `1 - (1 - t)^p`.
pub fn multiplicative_law(ring: &Rationals, order: u32) -> Fgl<Rationals> {
    let (x, y) = (SparsePoly::var(ring, 2, 0), SparsePoly::var(ring, 2, 1));
    Fgl::new(x.add(&y).sub(&x.mul(&y)), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::parse_poly;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn all_ones_log_is_multiplicative() {
        let g = law_from_log(&LogSeries::all_ones(&Rationals, 8), 8).unwrap();
        assert_eq!(g, multiplicative_law(&Rationals, 8));
        let alternating: Vec<_> = (0..8).map(|i| q(if i % 2 == 0 { 1 } else { -1 })).collect();
        let g = law_from_log(&LogSeries::new(&Rationals, alternating).unwrap(), 8).unwrap();
        assert_eq!(g.law(), &parse_poly(&Rationals, "x0 + x1 + x0*x1", 2).unwrap());
    }

    #[test]
    fn additive_log_is_additive() {
        let g = law_from_log(&LogSeries::additive(&Rationals, 6), 6).unwrap();
        assert_eq!(g.law(), &parse_poly(&Rationals, "x0 + x1", 2).unwrap());
        let reduced = reduce_law(&g, 5).unwrap();
        assert!(p_series(&reduced).unwrap().iter().all(|&c| c == 0));
    }

    #[test]
    fn multiplicative_p_series_is_frobenius() {
        let g = reduce_law(&multiplicative_law(&Rationals, 7), 5).unwrap();
        let s = p_series(&g).unwrap();
        assert_eq!(s, vec![0, 0, 0, 0, 0, 1, 0, 0]);
    }

    #[test]
    fn heights_of_the_standard_groups() {
        let r = height(&LogSeries::all_ones(&Rationals, 126), 5, 3).unwrap();
        assert_eq!(r.height, Height::Finite(1));
        let r = height(&LogSeries::additive(&Rationals, 126), 5, 3).unwrap();
        assert_eq!(r.height, Height::AtLeast(4));
        assert_eq!(r.height.to_string(), ">= 4 (infinity candidate)");
    }

    #[test]
    fn short_truncation_is_refused() {
        let e = height(&LogSeries::all_ones(&Rationals, 25), 5, 2).unwrap_err();
        assert_eq!(e, FormalGroupError::TruncationTooShort { needed: 26, have: 25 });
        let g = reduce_law(&multiplicative_law(&Rationals, 3), 5).unwrap();
        assert!(p_series(&g).is_err());
    }

    #[test]
    fn frobenius_on_logs() {
        let ones = LogSeries::all_ones(&Rationals, 9);
        assert_eq!(frob_on_log(&ones, 3).unwrap(), vec![q(1); 3]);
        let add = LogSeries::additive(&Rationals, 9);
        assert_eq!(frob_on_log(&add, 3).unwrap(), vec![q(0); 3]);
        assert!(frob_on_log(&add, 11).is_err());
    }

    #[test]
    fn non_integral_law_is_reported() {
        // l = t + t^2/4
        let l = LogSeries::new(&Rationals, vec![q(1), BigRational::new(1.into(), 2.into()), q(0), q(0)]).unwrap();
        let g = law_from_log(&l, 4).unwrap();
        assert!(matches!(integral_law(&g), Err(FormalGroupError::NonIntegral { .. })));
        assert!(matches!(reduce_law(&g, 2), Err(FormalGroupError::NonIntegral { .. })));
        assert!(reduce_law(&g, 3).is_ok());
    }

    #[test]
    fn constructed_laws_satisfy_the_axioms() {
        let l = LogSeries::new(&Rationals, vec![q(1), q(-3), q(4), q(0), q(7), q(2)]).unwrap();
        let g = law_from_log(&l, 6).unwrap();
        g.check_axioms().unwrap();
        assert_eq!(log_from_law(&g), l);
        let bad = Fgl::new(parse_poly(&Rationals, "x0 + x1 + x0^2*x1", 2).unwrap(), 4);
        assert!(bad.check_axioms().is_err());
    }
}
