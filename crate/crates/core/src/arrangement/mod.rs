//! Plane arrangements in `P^3`: multiple lines, multiple points and how the
//! pattern behaves under reduction.

mod linalg;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::multipoly::{Monomial, SparsePoly};
use crate::ring_tower::{Domain, PrimeField};

pub use linalg::{det3, dot, kernel_3x4, rank};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("plane {0} must have exactly 4 coefficients")]
    Width(usize),
    #[error("plane {0} is zero")]
    ZeroPlane(usize),
    #[error("planes {0} and {1} are proportional")]
    Proportional(usize, usize),
    #[error("form {0} is not linear and homogeneous in 4 variables")]
    NotLinear(usize),
    #[error("point {0} is the zero vector")]
    ZeroPoint(usize),
    #[error("{ring} has no reduction to F_{p}")]
    NoReduction { ring: String, p: u64 },
    #[error("reduction mod {p} degenerates the arrangement: {reason}")]
    Degenerate { p: u64, reason: String },
}

/// Distinct planes `sum a_i x_i = 0` in coordinates `(x, y, z, t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Arrangement<R: Domain> {
    ring: R,
    planes: Vec<Vec<R::Elem>>,
}

impl<R: Domain> Arrangement<R> {
    /// Each plane is rescaled to the ring's canonical representative.
    pub fn new(ring: &R, planes: Vec<Vec<R::Elem>>) -> Result<Self, ArrangementError> {
        let mut out = Vec::with_capacity(planes.len());
        for (i, mut p) in planes.into_iter().enumerate() {
            if p.len() != 4 {
                return Err(ArrangementError::Width(i));
            }
            if p.iter().all(|c| ring.is_zero(c)) {
                return Err(ArrangementError::ZeroPlane(i));
            }
            ring.normalize(&mut p);
            for (j, q) in out.iter().enumerate() {
                if rank(ring, &[p.clone(), Vec::clone(q)]) < 2 {
                    return Err(ArrangementError::Proportional(j, i));
                }
            }
            out.push(p);
        }
        Ok(Self { ring: ring.clone(), planes: out })
    }

    /// Planes from linear forms in 4 variables.
    pub fn from_forms(ring: &R, forms: &[SparsePoly<R>]) -> Result<Self, ArrangementError> {
        let mut planes = Vec::new();
        for (i, f) in forms.iter().enumerate() {
            if f.nvars() != 4 || !f.is_homogeneous_of_degree(1) {
                return Err(ArrangementError::NotLinear(i));
            }
            planes.push((0..4).map(|k| f.coeff(&Monomial::var(4, k))).collect());
        }
        Self::new(ring, planes)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn planes(&self) -> &[Vec<R::Elem>] {
        &self.planes
    }

    pub fn len(&self) -> usize {
        self.planes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.planes.is_empty()
    }

    fn rank_of(&self, idx: &[usize]) -> usize {
        let rows: Vec<Vec<R::Elem>> = idx.iter().map(|&i| self.planes[i].clone()).collect();
        rank(&self.ring, &rows)
    }

    /// Planes vanishing at `x`.
    pub fn planes_through(&self, x: &[R::Elem]) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.ring.is_zero(&dot(&self.ring, &self.planes[i], x))).collect()
    }
}

/// A line cut out by two or more of the planes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineStratum {
    pub planes: Vec<usize>,
}

impl LineStratum {
    pub fn multiplicity(&self) -> usize {
        self.planes.len()
    }
}

/// A point on three or more planes, not all through one line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointStratum<E> {
    pub planes: Vec<usize>,
    pub coords: Vec<E>,
}

impl<E> PointStratum<E> {
    pub fn multiplicity(&self) -> usize {
        self.planes.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceReport<E> {
    pub plane_count: usize,
    /// Every line, keyed by the set of planes containing it.
    pub lines: Vec<LineStratum>,
    pub points: Vec<PointStratum<E>>,
}

impl<E> IncidenceReport<E> {
    pub fn lines_of_multiplicity(&self, k: usize) -> usize {
        self.lines.iter().filter(|l| l.multiplicity() == k).count()
    }

    pub fn points_of_multiplicity(&self, k: usize) -> usize {
        self.points.iter().filter(|p| p.multiplicity() == k).count()
    }

    pub fn double_lines(&self) -> usize {
        self.lines_of_multiplicity(2)
    }

    pub fn triple_lines(&self) -> usize {
        self.lines_of_multiplicity(3)
    }

    /// The combinatorial type: plane sets of all lines and points.
    pub fn labels(&self) -> (BTreeSet<Vec<usize>>, BTreeSet<Vec<usize>>) {
        (
            self.lines.iter().map(|l| l.planes.clone()).collect(),
            self.points.iter().map(|p| p.planes.clone()).collect(),
        )
    }
}

/// Lines through pairs of planes and points through rank-3 triples,
/// each deduplicated by its full set of incident planes.
pub fn incidence<R: Domain>(a: &Arrangement<R>) -> IncidenceReport<R::Elem> {
    let n = a.len();
    let mut lines: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let on: Vec<usize> = (0..n).filter(|&k| k == i || k == j || a.rank_of(&[i, j, k]) == 2).collect();
            lines.insert(on, ());
        }
    }
    let mut points: BTreeMap<Vec<usize>, Vec<R::Elem>> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if a.rank_of(&[i, j, k]) < 3 {
                    continue;
                }
                let p = &a.planes;
                let mut x = kernel_3x4(&a.ring, [&p[i], &p[j], &p[k]]);
                a.ring.normalize(&mut x);
                let on = a.planes_through(&x);
                debug_assert_eq!(a.rank_of(&on), 3);
                points.entry(on).or_insert(x);
            }
        }
    }
    IncidenceReport {
        plane_count: n,
        lines: lines.into_keys().map(|planes| LineStratum { planes }).collect(),
        points: points.into_iter().map(|(planes, coords)| PointStratum { planes, coords }).collect(),
    }
}

/// Number of planes through each point.
pub fn verify_points<R: Domain>(a: &Arrangement<R>, points: &[Vec<R::Elem>]) -> Result<Vec<usize>, ArrangementError> {
    points
        .iter()
        .enumerate()
        .map(|(i, x)| {
            if x.len() != 4 || x.iter().all(|c| a.ring.is_zero(c)) {
                return Err(ArrangementError::ZeroPoint(i));
            }
            Ok(a.planes_through(x).len())
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionComparison {
    pub same: bool,
    /// Strata present on one side only, described by their plane sets.
    pub diff: Vec<String>,
}

/// Reduce every plane to `F_p` via the ring's residue map and compare the
/// labeled combinatorics on both sides.
pub fn reduction_compare<R: Domain>(a: &Arrangement<R>, p: u64) -> Result<ReductionComparison, ArrangementError> {
    let no_map = || ArrangementError::NoReduction { ring: a.ring.name(), p };
    let field = PrimeField::try_new(p).ok_or_else(no_map)?;
    let reduced: Vec<Vec<u64>> = a
        .planes
        .iter()
        .map(|pl| pl.iter().map(|c| a.ring.residue(c, p)).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()
        .ok_or_else(no_map)?;
    let b = Arrangement::new(&field, reduced).map_err(|e| ArrangementError::Degenerate { p, reason: e.to_string() })?;
    let (l0, p0) = incidence(a).labels();
    let (l1, p1) = incidence(&b).labels();
    let mut diff = Vec::new();
    let mut side = |tag: &str, x: &BTreeSet<Vec<usize>>, y: &BTreeSet<Vec<usize>>, which: &str| {
        for s in x.difference(y) {
            diff.push(format!("{tag} {s:?} only {which}"));
        }
    };
    side("line", &l0, &l1, "before reduction");
    side("line", &l1, &l0, "after reduction");
    side("point", &p0, &p1, "before reduction");
    side("point", &p1, &p0, "after reduction");
    Ok(ReductionComparison { same: diff.is_empty(), diff })
}

/// Only double/triple lines and points of multiplicity at most 5.
pub fn admissible_double_octic<E>(r: &IncidenceReport<E>) -> bool {
    r.lines.iter().all(|l| l.multiplicity() <= 3) && r.points.iter().all(|p| p.multiplicity() <= 5)
}
