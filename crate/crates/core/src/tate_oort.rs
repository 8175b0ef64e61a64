//! The group scheme `x^p = S x` with law `x1 + x2 + t x1 x2` over
//! `F_p[S, t]/(S t)`, checked by rewriting.

use serde::Serialize;
use thiserror::Error;

use crate::multipoly::{Monomial, SparsePoly};
use crate::ring_tower::{PrimeField, Ring};

const S: usize = 0;
const T: usize = 1;
const NVARS: usize = 5;
const VAR_NAMES: [&str; NVARS] = ["S", "t", "x1", "x2", "x3"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TateOortError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
}

/// `F_p[S, t, x1, x2, x3]` modulo `S t` and `x_i^p - S x_i`.
#[derive(Clone, Debug)]
pub struct TOContext {
    field: PrimeField,
}

pub type Expr = SparsePoly<PrimeField>;

impl TOContext {
    pub fn new(p: u64) -> Result<Self, TateOortError> {
        Ok(Self { field: PrimeField::try_new(p).ok_or(TateOortError::NotPrime(p))? })
    }

    pub fn p(&self) -> u64 {
        self.field.modulus()
    }

    pub fn s(&self) -> Expr {
        SparsePoly::var(&self.field, NVARS, S)
    }

    pub fn t(&self) -> Expr {
        SparsePoly::var(&self.field, NVARS, T)
    }

    /// `x1`, `x2`, `x3` for `i = 1, 2, 3`.
    pub fn x(&self, i: usize) -> Expr {
        assert!((1..=3).contains(&i));
        SparsePoly::var(&self.field, NVARS, i + 1)
    }

    pub fn constant(&self, c: i64) -> Expr {
        SparsePoly::constant(&self.field, NVARS, self.field.from_i64(c))
    }

    /// Normal form: `x_i^p -> S x_i` until every `x`-exponent is below `p`,
    /// then any monomial divisible by `S t` is dropped.
    pub fn reduce(&self, f: &Expr) -> Expr {
        let p = self.p() as u16;
        let terms = f.terms().filter_map(|(m, c)| {
            let mut e = m.exps().to_vec();
            for i in 2..NVARS {
                while e[i] >= p {
                    e[i] -= p - 1;
                    e[S] += 1;
                }
            }
            (e[S] == 0 || e[T] == 0).then(|| (Monomial::new(e), *c))
        });
        SparsePoly::from_terms(&self.field, NVARS, terms)
    }

    pub fn mul(&self, a: &Expr, b: &Expr) -> Expr {
        self.reduce(&a.mul(b))
    }

    pub fn pow(&self, a: &Expr, k: u32) -> Expr {
        (0..k).fold(self.constant(1), |acc, _| self.mul(&acc, a))
    }

    /// `a + b + t a b`.
    pub fn law(&self, a: &Expr, b: &Expr) -> Expr {
        self.reduce(&a.add(b).add(&self.mul(&self.t(), &self.mul(a, b))))
    }

    /// `-x sum_{k<p} (-t x)^k`, the truncated expansion of `-x / (1 + t x)`.
    pub fn inverse(&self, x: &Expr) -> Expr {
        let minus_tx = self.mul(&self.t(), x).neg();
        let mut sum = self.constant(0);
        let mut term = self.constant(1);
        for _ in 0..self.p() {
            sum = sum.add(&term);
            term = self.mul(&term, &minus_tx);
        }
        self.mul(&x.neg(), &sum)
    }

    /// `x^p - S x`, the defining equation.
    pub fn relation(&self, x: &Expr) -> Expr {
        self.reduce(&self.pow(x, self.p() as u32).sub(&self.mul(&self.s(), x)))
    }

    pub fn format(&self, f: &Expr) -> String {
        let names: Vec<String> = VAR_NAMES.iter().map(|s| s.to_string()).collect();
        f.format_with(&names)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    /// Normal form of the expression that must vanish.
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TateOortReport {
    pub p: u64,
    pub checks: Vec<AxiomCheck>,
}

impl TateOortReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Group-law identities, closure, inverses and the three specializations.
pub fn verify_axioms(p: u64) -> Result<TateOortReport, TateOortError> {
    let cx = TOContext::new(p)?;
    let (x1, x2, x3) = (cx.x(1), cx.x(2), cx.x(3));
    let t = cx.t();
    let one = cx.constant(1);
    let mut checks = Vec::new();
    let mut record = |name: &str, residual: Expr| {
        let residual = cx.reduce(&residual);
        checks.push(AxiomCheck { name: name.into(), passed: residual.is_zero(), residual: cx.format(&residual) });
    };

    // M(x) = [[1, 0], [x, 1 + t x]]; M(x1) M(x2) = [[1, 0], [x1 + (1 + t x1) x2, (1 + t x1)(1 + t x2)]]
    let d1 = one.add(&cx.mul(&t, &x1));
    let d2 = one.add(&cx.mul(&t, &x2));
    let lower_left = x1.add(&cx.mul(&d1, &x2));
    let lower_right = cx.mul(&d1, &d2);
    let law12 = cx.law(&x1, &x2);
    record("matrix product: lower-left entry is the law", lower_left.sub(&law12));
    record("matrix product: lower-right entry is 1 + t (x1 + x2 + t x1 x2)", lower_right.sub(&one.add(&cx.mul(&t, &law12))));

    record("identity: x1 + 0 = x1", cx.law(&x1, &cx.constant(0)).sub(&x1));
    record("commutativity", law12.sub(&cx.law(&x2, &x1)));
    record("associativity", cx.law(&law12, &x3).sub(&cx.law(&x1, &cx.law(&x2, &x3))));

    let inv = cx.inverse(&x1);
    record("inverse: x1 + y = 0", cx.law(&x1, &inv));
    record("inverse: y^p = S y", cx.relation(&inv));
    record("closure: (x1 + x2)^p = S (x1 + x2)", cx.relation(&law12));

    let f = cx.field;
    let at = |e: &Expr, s: i64, tv: i64| e.specialize(S, &f.from_i64(s)).specialize(T, &f.from_i64(tv));
    // t = 0: the additive law; with S = 0 this is alpha_p
    record("t = 0: law is x1 + x2", at(&law12, 0, 0).sub(&x1.add(&x2)));
    record("S = 0, t = 0: x1^p = 0 (alpha_p)", at(&cx.pow(&x1, p as u32), 0, 0));
    // S = 1, t = 0: x^p = x, the constant group Z/p: every element of F_p is a point
    let points = f.elements().filter(|&a| {
        let e = cx.relation(&x1).specialize(S, &1).specialize(T, &0);
        let pt: Vec<u64> = vec![1, 0, a, 0, 0];
        e.evaluate(&pt).expect("arity") == 0
    });
    let missing = p - points.count() as u64;
    record(
        "S = 1, t = 0: x^p = x has p points in F_p (Z/p)",
        SparsePoly::constant(&f, NVARS, f.from_i64(missing as i64)),
    );
    // S = 0, t = 1: (1 + x1)(1 + x2) - 1, and lambda = 1 + x satisfies lambda^p = 1
    record("S = 0, t = 1: law is (1 + x1)(1 + x2) - 1", at(&law12, 0, 1).sub(&cx.mul(&one.add(&x1), &one.add(&x2)).sub(&one)));
    record("S = 0, t = 1: (1 + x1)^p = 1 (mu_p)", at(&cx.pow(&one.add(&x1), p as u32).sub(&one), 0, 1));

    Ok(TateOortReport { p, checks })
}
