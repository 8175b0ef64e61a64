use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::multipoly::{Monomial, SparsePoly};
use crate::ring_tower::{Rationals, Ring};

/// Truncated univariate power series over `Q`, stored as integer numerators
/// over one common denominator so that products avoid per-coefficient gcds.
/// Entry `k` is the `t^k` coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct UniSeries {
    num: Vec<BigInt>,
    den: BigInt,
}

impl UniSeries {
    pub fn new(c: Vec<BigRational>) -> Self {
        let den = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let num = c.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        Self::reduced(num, den)
    }

    fn reduced(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|x| *x = -&*x);
        }
        let g = num.iter().fold(den.clone(), |acc, x| acc.gcd(x));
        if !g.is_one() {
            num.iter_mut().for_each(|x| *x /= &g);
            den /= &g;
        }
        UniSeries { num, den }
    }

    fn zeros(len: usize) -> Self {
        UniSeries { num: vec![BigInt::zero(); len], den: BigInt::one() }
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        match self.num.get(k) {
            Some(x) => BigRational::new(x.clone(), self.den.clone()),
            None => BigRational::zero(),
        }
    }

    /// Drop degrees above `t`.
    pub fn truncate(&self, t: usize) -> Self {
        Self::reduced(self.num.iter().take(t + 1).cloned().collect(), self.den.clone())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::reduced(self.num.iter().map(|x| x * c.numer()).collect(), &self.den * c.denom())
    }

    fn mul_trunc(&self, other: &Self, t: usize) -> Self {
        let mut out = vec![BigInt::zero(); t + 1];
        for (i, a) in self.num.iter().enumerate().take(t + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate().take(t + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::reduced(out, &self.den * &other.den)
    }

    fn add_constant(&mut self, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let den = self.den.lcm(c.denom());
        let k = &den / &self.den;
        let mut num: Vec<BigInt> = self.num.iter().map(|x| x * &k).collect();
        num[0] += c.numer() * (&den / c.denom());
        *self = Self::reduced(num, den);
    }

    /// `self(inner(t))` up to `t^deg`; `inner` must have no constant term.
    pub fn compose(&self, inner: &Self, deg: usize) -> Self {
        debug_assert!(inner.coeff(0).is_zero());
        let mut acc = Self::zeros(deg + 1);
        for k in (0..self.num.len().min(deg + 1)).rev() {
            acc = acc.mul_trunc(inner, deg);
            acc.add_constant(&self.coeff(k));
        }
        acc
    }

    /// `1 / self` up to `t^(deg-1)`; needs an invertible constant term.
    pub fn inverse(&self, deg: usize) -> Self {
        let c0 = self.coeff(0);
        assert!(!c0.is_zero(), "series is not invertible");
        let inv0 = c0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(deg);
        for k in 0..deg {
            let mut s = if k == 0 { BigRational::one() } else { BigRational::zero() };
            for j in 1..=k {
                s -= self.coeff(j) * &out[k - j];
            }
            out.push(s * &inv0);
        }
        Self::new(out)
    }

    /// The series in variable `var` of a bivariate polynomial ring.
    pub fn bivariate(&self, ring: &Rationals, var: usize) -> SparsePoly<Rationals> {
        let terms = (0..self.num.len()).map(|k| {
            let mut e = vec![0u16; 2];
            e[var] = k as u16;
            (Monomial::new(e), self.coeff(k))
        });
        SparsePoly::from_terms(ring, 2, terms)
    }

    /// `self(u)` for a multivariate `u` without constant term, up to total degree `order`.
    pub fn compose_into(&self, u: &SparsePoly<Rationals>, order: u32) -> SparsePoly<Rationals> {
        let ring = *u.ring();
        let mut acc = SparsePoly::zero(&ring, u.nvars());
        for k in (0..self.num.len().min(order as usize + 1)).rev() {
            acc = acc.mul_truncated(u, order).add(&SparsePoly::constant(&ring, u.nvars(), self.coeff(k)));
        }
        acc
    }
}

/// Compositional inverse of `f = t + ...` up to `t^deg`, by Lagrange
/// inversion: `g_n = [t^(n-1)] (t / f)^n / n`.
pub fn reversion(f: &UniSeries, deg: usize) -> UniSeries {
    assert!(f.coeff(0).is_zero() && f.coeff(1).is_one(), "reversion needs f = t + O(t^2)");
    let mut g = vec![BigRational::zero(); deg + 1];
    if deg == 0 {
        return UniSeries::new(g);
    }
    let shifted = UniSeries::new((1..=deg).map(|k| f.coeff(k)).collect());
    let h = shifted.inverse(deg);
    let mut hn = UniSeries::new(vec![BigRational::one()]);
    for (n, gn) in g.iter_mut().enumerate().skip(1) {
        hn = hn.mul_trunc(&h, deg - 1);
        *gn = hn.coeff(n - 1) / BigRational::from_integer(n.into());
    }
    UniSeries::new(g)
}

/// `F(a, b)` for a bivariate `F`, truncated at total degree `order`.
/// `a` and `b` must have no constant term.
pub fn compose2<R: Ring>(f: &SparsePoly<R>, a: &SparsePoly<R>, b: &SparsePoly<R>, order: u32) -> SparsePoly<R> {
    let ring = f.ring();
    let n = a.nvars();
    let (mut di, mut dj) = (0usize, 0usize);
    for (m, _) in f.terms() {
        di = di.max(m.exps()[0] as usize);
        dj = dj.max(m.exps()[1] as usize);
    }
    let powers = |x: &SparsePoly<R>, d: usize| {
        let mut v = vec![SparsePoly::one(ring, n)];
        for k in 1..=d {
            let next = v[k - 1].mul_truncated(x, order);
            v.push(next);
        }
        v
    };
    let pa = powers(a, di);
    let pb = powers(b, dj);
    let mut acc = SparsePoly::zero(ring, n);
    for (m, c) in f.terms() {
        let (i, j) = (m.exps()[0] as usize, m.exps()[1] as usize);
        acc = acc.add(&pa[i].mul_truncated(&pb[j], order).scale(c));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[i64]) -> UniSeries {
        UniSeries::new(v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    #[test]
    fn reversion_inverts() {
        let f = s(&[0, 1, 3, -2, 5, 1]);
        let g = reversion(&f, 5);
        assert_eq!(f.compose(&g, 5), s(&[0, 1, 0, 0, 0, 0]));
        assert_eq!(g.compose(&f, 5), s(&[0, 1, 0, 0, 0, 0]));
    }

    #[test]
    fn geometric_inverse() {
        assert_eq!(s(&[1, -1]).inverse(5), s(&[1, 1, 1, 1, 1]));
    }
}
