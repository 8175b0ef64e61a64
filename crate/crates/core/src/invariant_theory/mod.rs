//! Diagonal actions of `mu_d` on `P^N`: Molien series, invariant monomials,
//! generation by low-degree invariants, fixed loci and free hypersurfaces.

mod cyclotomic;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::multipoly::{Monomial, SparsePoly};
use crate::ring_tower::Ring;

pub use cyclotomic::{cyclotomic_poly, CyclotomicRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("group order must be at least 1")]
    ZeroOrder,
    #[error("need at least one variable")]
    NoVariables,
    #[error("Molien cross-check failed at degree {degree}: counting gives {counted}, cyclotomic series gives {series}")]
    CrossCheck { degree: usize, counted: String, series: String },
    #[error("need degree > gen_degree_max >= 1, got degree {degree} and gen_degree_max {gen_max}")]
    BadDegrees { degree: u32, gen_max: u32 },
    #[error("polynomial has {got} variables, action has {expected}")]
    Arity { expected: usize, got: usize },
    #[error("polynomial is not invariant: {monomial} has weight {weight} mod {d}")]
    NotInvariant { monomial: String, weight: u64, d: u32 },
    #[error("fixed locus has a component of dimension {dim}; freeness needs isolated fixed points")]
    NonIsolated { dim: usize },
    #[error("the zero polynomial defines no hypersurface")]
    ZeroPolynomial,
}

/// `X_i -> zeta^{w_i} X_i` for a primitive `d`-th root of unity `zeta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalAction {
    d: u32,
    weights: Vec<u32>,
}

impl DiagonalAction {
    pub fn new(d: u32, weights: &[i64]) -> Result<Self, InvariantError> {
        if d == 0 {
            return Err(InvariantError::ZeroOrder);
        }
        if weights.is_empty() {
            return Err(InvariantError::NoVariables);
        }
        let weights = weights.iter().map(|w| w.mod_floor(&(d as i64)) as u32).collect();
        Ok(Self { d, weights })
    }

    pub fn order(&self) -> u32 {
        self.d
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, m: &Monomial) -> u64 {
        m.exps().iter().zip(&self.weights).map(|(&e, &w)| e as u64 * w as u64).sum::<u64>() % self.d as u64
    }

    pub fn is_invariant(&self, m: &Monomial) -> bool {
        self.weight(m) == 0
    }
}

/// `c_0..c_{n_max}`: invariant monomials per degree, by direct counting and
/// by the averaged cyclotomic series; errors if the two differ.
pub fn molien(a: &DiagonalAction, n_max: usize) -> Result<Vec<u64>, InvariantError> {
    let counted = molien_by_counting(a, n_max);
    let series = molien_by_cyclotomic(a, n_max);
    for (n, (c, s)) in counted.iter().zip(&series).enumerate() {
        if BigInt::from(*c) != *s {
            return Err(InvariantError::CrossCheck { degree: n, counted: c.to_string(), series: s.to_string() });
        }
    }
    Ok(counted)
}

/// Lattice count: adds one variable at a time, tracking (degree, weight mod d).
pub fn molien_by_counting(a: &DiagonalAction, n_max: usize) -> Vec<u64> {
    let d = a.d as usize;
    // dp[n][r] = monomials of degree n and weight r in the variables so far
    let mut dp = vec![vec![0u64; d]; n_max + 1];
    dp[0][0] = 1;
    for &w in &a.weights {
        let w = w as usize;
        for n in 1..=n_max {
            for r in 0..d {
                let prev = dp[n - 1][(r + d - w) % d];
                dp[n][r] += prev;
            }
        }
    }
    dp.iter().map(|row| row[0]).collect()
}

/// `(1/d) sum_j prod_i (1 - zeta^{j w_i} x)^{-1}` expanded in `Z[zeta_d][[x]]`.
///
/// Panics if the sum is not an integer divisible by `d`, which cannot
/// happen for a correct implementation.
pub fn molien_by_cyclotomic(a: &DiagonalAction, n_max: usize) -> Vec<BigInt> {
    let ring = CyclotomicRing::new(a.d);
    let mut total: Vec<Vec<BigInt>> = vec![ring.zero(); n_max + 1];
    for j in 0..a.d as u64 {
        let mut series: Vec<Vec<BigInt>> = vec![ring.zero(); n_max + 1];
        series[0] = ring.from_int(1);
        for &w in &a.weights {
            // multiply by 1/(1 - z x): c'_k = c_k + z c'_{k-1}
            let z = ring.zeta_pow(j * w as u64);
            for k in 1..=n_max {
                let carried = ring.mul(z, &series[k - 1]);
                series[k] = ring.add(&series[k], &carried);
            }
        }
        for (t, s) in total.iter_mut().zip(&series) {
            *t = ring.add(t, s);
        }
    }
    let d = BigInt::from(a.d);
    total
        .iter()
        .enumerate()
        .map(|(n, t)| {
            let v = ring.as_integer(t).unwrap_or_else(|| panic!("Molien sum at degree {n} is not rational"));
            let (q, r) = v.div_rem(&d);
            assert!(r.is_zero(), "Molien sum at degree {n} is not divisible by {d}");
            q
        })
        .collect()
}

/// Invariant monomials of the given degree, descending in graded-lex order.
pub fn invariant_monomials(a: &DiagonalAction, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u16; a.nvars()];
    enumerate(a, 0, degree, &mut exps, &mut out);
    out
}

fn enumerate(a: &DiagonalAction, i: usize, left: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
    if i + 1 == exps.len() {
        exps[i] = left as u16;
        let m = Monomial::new(exps.clone());
        if a.is_invariant(&m) {
            out.push(m);
        }
        return;
    }
    for e in (0..=left).rev() {
        exps[i] = e as u16;
        enumerate(a, i + 1, left - e, exps, out);
    }
    exps[i] = 0;
}

/// Outcome of [`generated_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationReport {
    /// Invariant monomials that are not products of invariants of degree `<= gen_max`.
    pub failures: Vec<Monomial>,
    /// For every other invariant monomial, one factorization into such invariants.
    pub factorizations: Vec<(Monomial, Vec<Monomial>)>,
}

/// Which invariant monomials of `degree` factor into invariant monomials of
/// degree at most `gen_max`.
pub fn generated_check(a: &DiagonalAction, degree: u32, gen_max: u32) -> Result<GenerationReport, InvariantError> {
    if gen_max < 1 || degree <= gen_max {
        return Err(InvariantError::BadDegrees { degree, gen_max });
    }
    let gens: Vec<Monomial> = (1..=gen_max).flat_map(|k| invariant_monomials(a, k)).collect();
    let mut memo: HashMap<Monomial, Option<Monomial>> = HashMap::new();
    let mut report = GenerationReport { failures: Vec::new(), factorizations: Vec::new() };
    for m in invariant_monomials(a, degree) {
        if factor(&m, &gens, gen_max, &mut memo) {
            let mut parts = Vec::new();
            let mut rest = m.clone();
            while rest.degree() > 0 {
                let g = memo[&rest].clone().expect("factorable");
                rest = rest.div(&g).expect("divides");
                parts.push(g);
            }
            report.factorizations.push((m, parts));
        } else {
            report.failures.push(m);
        }
    }
    Ok(report)
}

/// Records in `memo` a generator `g | m` whose cofactor again factors.
fn factor(m: &Monomial, gens: &[Monomial], gen_max: u32, memo: &mut HashMap<Monomial, Option<Monomial>>) -> bool {
    if m.degree() == 0 {
        return true;
    }
    if let Some(r) = memo.get(m) {
        return r.is_some();
    }
    let mut found = None;
    if m.degree() <= gen_max && gens.contains(m) {
        found = Some(m.clone());
    } else {
        for g in gens.iter().filter(|g| g.divides(m)) {
            let rest = m.div(g).expect("divides");
            if factor(&rest, gens, gen_max, memo) {
                found = Some(g.clone());
                break;
            }
        }
    }
    let ok = found.is_some();
    memo.insert(m.clone(), found);
    ok
}

/// A linear subspace `{x_j = 0 for j not in variables}` of the fixed locus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedComponent {
    pub weight: u32,
    pub variables: Vec<usize>,
}

impl FixedComponent {
    pub fn dim(&self) -> usize {
        self.variables.len() - 1
    }
}

/// The fixed locus: one coordinate subspace per weight class.
pub fn fixed_points(a: &DiagonalAction) -> Vec<FixedComponent> {
    let mut classes: Vec<FixedComponent> = Vec::new();
    for (i, &w) in a.weights.iter().enumerate() {
        match classes.iter_mut().find(|c| c.weight == w) {
            Some(c) => c.variables.push(i),
            None => classes.push(FixedComponent { weight: w, variables: vec![i] }),
        }
    }
    classes.sort_by_key(|c| c.variables[0]);
    classes
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub free: bool,
    /// Indices `i` of coordinate points `e_i` lying on the hypersurface.
    pub violations: Vec<usize>,
}

/// Whether `f = 0` avoids every fixed point. Only isolated fixed points are supported.
pub fn freeness_check<R: Ring>(f: &SparsePoly<R>, a: &DiagonalAction) -> Result<FreenessReport, InvariantError> {
    if f.nvars() != a.nvars() {
        return Err(InvariantError::Arity { expected: a.nvars(), got: f.nvars() });
    }
    if f.is_zero() {
        return Err(InvariantError::ZeroPolynomial);
    }
    for (m, _) in f.terms() {
        if !a.is_invariant(m) {
            return Err(InvariantError::NotInvariant {
                monomial: m.format_with(&f.default_names()),
                weight: a.weight(m),
                d: a.d,
            });
        }
    }
    let comps = fixed_points(a);
    if let Some(c) = comps.iter().find(|c| c.dim() > 0) {
        return Err(InvariantError::NonIsolated { dim: c.dim() });
    }
    let ring = f.ring();
    let mut violations = Vec::new();
    for c in &comps {
        let i = c.variables[0];
        let point: Vec<R::Elem> = (0..a.nvars()).map(|j| if j == i { ring.one() } else { ring.zero() }).collect();
        if ring.is_zero(&f.evaluate(&point).expect("arity checked")) {
            violations.push(i);
        }
    }
    Ok(FreenessReport { free: violations.is_empty(), violations })
}

/// The binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1)).to_u64().expect("fits in u64")
}
