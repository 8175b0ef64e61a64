use thiserror::Error;

use super::dual::MAX_DUAL_ORDER;
use super::{Domain, DualNumbers, PrimeField, Ring};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LiftError {
    #[error("f(r) = {0} is not zero in R[eps]/eps^n")]
    NotARoot(String),
    #[error("cannot lift from eps^{0}: truncation is limited to eps^{MAX_DUAL_ORDER}")]
    OrderTooLarge(usize),
    #[error("the root must have at least one coefficient")]
    EmptyRoot,
}

/// Solutions `c` of `f(r + c eps^n) = 0` in `R[eps]/eps^(n+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftSet<E> {
    /// Obstructed: no lift exists.
    Empty,
    Unique(E),
    /// Every `c` in the base ring lifts (`f'(r_0) = 0` and no residue).
    Every,
}

impl<E: Clone + PartialEq> LiftSet<E> {
    pub fn is_empty(&self) -> bool {
        matches!(self, LiftSet::Empty)
    }

    pub fn contains(&self, c: &E) -> bool {
        match self {
            LiftSet::Empty => false,
            LiftSet::Unique(x) => x == c,
            LiftSet::Every => true,
        }
    }

    /// Whether some lift `c` reduces to `target` in `F_p`.
    pub fn admits_residue<R: Ring<Elem = E>>(&self, ring: &R, p: u64, target: u64) -> bool {
        match self {
            LiftSet::Empty => false,
            LiftSet::Unique(c) => ring.residue(c, p) == Some(target),
            LiftSet::Every => true,
        }
    }
}

impl LiftSet<u64> {
    /// The lift set as an explicit list of field elements.
    pub fn elements(&self, field: &PrimeField) -> Vec<u64> {
        match self {
            LiftSet::Empty => Vec::new(),
            LiftSet::Unique(c) => vec![*c],
            LiftSet::Every => field.elements().collect(),
        }
    }
}

/// Lift a root `r` of `f` (coefficients low to high) from `R[eps]/eps^n`
/// to `R[eps]/eps^(n+1)`, where `n = r.len()`.
///
/// Since `eps^(2n) = 0` in the target, `f(r + c eps^n) = f(r) + f'(r_0) c eps^n`,
/// so the lifts are the solutions of one linear equation over `R`.
pub fn root_lift<R: Domain>(ring: &R, f: &[R::Elem], r: &[R::Elem]) -> Result<LiftSet<R::Elem>, LiftError> {
    let n = r.len();
    if n == 0 {
        return Err(LiftError::EmptyRoot);
    }
    if n + 1 > MAX_DUAL_ORDER {
        return Err(LiftError::OrderTooLarge(n));
    }
    let target = DualNumbers::new(ring.clone(), n + 1);
    let x = target.from_coeffs(r);
    let lifted: Vec<_> = f.iter().map(|c| target.embed(c)).collect();
    let value = horner(&target, &lifted, &x);
    if value[..n].iter().any(|c| !ring.is_zero(c)) {
        let source = DualNumbers::new(ring.clone(), n);
        return Err(LiftError::NotARoot(source.format(&source.from_coeffs(&value))));
    }
    let residue = &value[n];
    let slope = horner(ring, &derivative(ring, f), &r[0]);
    Ok(if ring.is_zero(&slope) {
        if ring.is_zero(residue) {
            LiftSet::Every
        } else {
            LiftSet::Empty
        }
    } else {
        match ring.div_exact(&ring.neg(residue), &slope) {
            Some(c) => LiftSet::Unique(c),
            None => LiftSet::Empty,
        }
    })
}

fn horner<R: Ring>(ring: &R, f: &[R::Elem], x: &R::Elem) -> R::Elem {
    f.iter().rev().fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, x), c))
}

fn derivative<R: Ring>(ring: &R, f: &[R::Elem]) -> Vec<R::Elem> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| ring.mul(&ring.from_i64(i as i64), c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring_tower::{QuadInt, QuadOrder};

    fn golden_poly_fp() -> Vec<u64> {
        let f = PrimeField::new(5);
        vec![f.elem(-1), 1, 1]
    }

    #[test]
    fn every_lift_at_the_double_root_mod_5() {
        let f5 = PrimeField::new(5);
        let lifts = root_lift(&f5, &golden_poly_fp(), &[2]).unwrap();
        assert_eq!(lifts.elements(&f5), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn second_order_lift_is_obstructed() {
        let f5 = PrimeField::new(5);
        let lifts = root_lift(&f5, &golden_poly_fp(), &[2, 1]).unwrap();
        assert!(lifts.is_empty());
        // brute force: no c in F_5 makes (2 + eps + c eps^2) a root mod eps^3
        let d = DualNumbers::new(f5, 3);
        for c in f5.elements() {
            let x = vec![2, 1, c];
            let v = d.add(&d.add(&d.mul(&x, &x), &x), &d.from_i64(-1));
            assert!(!d.is_zero(&v));
        }
    }

    #[test]
    fn exact_golden_root_has_only_the_trivial_lift() {
        let o = QuadOrder;
        let f = vec![QuadInt::new(-1, 0), QuadInt::new(1, 0), QuadInt::new(1, 0)];
        let lifts = root_lift(&o, &f, &[QuadInt::golden()]).unwrap();
        assert_eq!(lifts, LiftSet::Unique(QuadInt::default()));
        // the first-order deformation 2 + eps needs c = 1 mod pi
        assert!(!lifts.admits_residue(&o, 5, 1));
    }

    #[test]
    fn hensel_case_has_a_unique_lift() {
        let f7 = PrimeField::new(7);
        let f = vec![f7.elem(-2), 0, 1];
        for r in [3u64, 4] {
            match root_lift(&f7, &f, &[r]).unwrap() {
                LiftSet::Unique(_) => {}
                other => panic!("expected unique lift, got {other:?}"),
            }
        }
        let lifted = root_lift(&f7, &f, &[3, 0]).unwrap();
        assert_eq!(lifted, LiftSet::Unique(0));
    }

    #[test]
    fn rejects_non_roots() {
        let f5 = PrimeField::new(5);
        assert!(matches!(root_lift(&f5, &golden_poly_fp(), &[1]), Err(LiftError::NotARoot(_))));
        assert_eq!(root_lift(&f5, &golden_poly_fp(), &[2, 0, 0, 0]), Err(LiftError::OrderTooLarge(4)));
    }
}
