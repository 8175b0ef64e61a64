//! Logarithm coefficients of the Artin-Mazur formal group for Calabi-Yau
//! hypersurfaces and double covers, read off as diagonal coefficients of
//! powers of the defining equation.

use thiserror::Error;

use crate::multipoly::{Monomial, SparsePoly};
use crate::ring_tower::{is_prime, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StienstraError {
    #[error("expected a polynomial in {expected} variables, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("expected a nonzero form of degree {expected}")]
    NotHomogeneous { expected: u32 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("the double-cover coefficient needs an odd prime, got {0}")]
    EvenPrime(u64),
    #[error("ring {ring} has no reduction map to F_{p}")]
    NoReduction { ring: String, p: u64 },
    #[error("m must be at least 1")]
    ZeroIndex,
}

/// A hypersurface of degree `N+1` in `P^N`.
#[derive(Clone, Debug)]
pub struct HypersurfaceInput<R: Ring> {
    f: SparsePoly<R>,
}

impl<R: Ring> HypersurfaceInput<R> {
    /// `f` lives in `N+1` variables and must be homogeneous of degree `N+1`.
    pub fn new(f: SparsePoly<R>) -> Result<Self, StienstraError> {
        let k = f.nvars() as u32;
        if f.is_zero() || !f.is_homogeneous_of_degree(k) {
            return Err(StienstraError::NotHomogeneous { expected: k });
        }
        Ok(Self { f })
    }

    /// `N`, the dimension of the ambient projective space.
    pub fn dim(&self) -> usize {
        self.f.nvars() - 1
    }

    pub fn poly(&self) -> &SparsePoly<R> {
        &self.f
    }
}

/// A double cover of `P^n` branched along `W = 0`, `deg W = 2(n+1)`.
#[derive(Clone, Debug)]
pub struct DoubleCoverInput<R: Ring> {
    w: SparsePoly<R>,
}

impl<R: Ring> DoubleCoverInput<R> {
    pub fn new(w: SparsePoly<R>) -> Result<Self, StienstraError> {
        let k = 2 * w.nvars() as u32;
        if w.is_zero() || !w.is_homogeneous_of_degree(k) {
            return Err(StienstraError::NotHomogeneous { expected: k });
        }
        Ok(Self { w })
    }

    pub fn dim(&self) -> usize {
        self.w.nvars() - 1
    }

    pub fn poly(&self) -> &SparsePoly<R> {
        &self.w
    }
}

/// Coefficient of `(X_0 ... X_N)^(m-1)` in `F^(m-1)`.
pub fn beta<R: Ring>(h: &HypersurfaceInput<R>, m: u32) -> Result<R::Elem, StienstraError> {
    if m == 0 {
        return Err(StienstraError::ZeroIndex);
    }
    Ok(diagonal_coeff(&h.f, m - 1, (m - 1) as u16))
}

/// `beta_1, ..., beta_t`.
pub fn betas<R: Ring>(h: &HypersurfaceInput<R>, t: u32) -> Vec<R::Elem> {
    (1..=t).map(|m| diagonal_coeff(&h.f, m - 1, (m - 1) as u16)).collect()
}

/// Coefficient of `(X_0 ... X_n)^(p-1)` in `W^((p-1)/2)`.
pub fn beta_double<R: Ring>(d: &DoubleCoverInput<R>, p: u64) -> Result<R::Elem, StienstraError> {
    if !is_prime(p) {
        return Err(StienstraError::NotPrime(p));
    }
    if p == 2 {
        return Err(StienstraError::EvenPrime(p));
    }
    Ok(diagonal_coeff(&d.w, ((p - 1) / 2) as u32, (p - 1) as u16))
}

fn diagonal_coeff<R: Ring>(f: &SparsePoly<R>, power: u32, k: u16) -> R::Elem {
    let cap = Monomial::diagonal(f.nvars(), k);
    f.pow_bounded(power, &cap).coeff(&cap)
}

#[derive(Clone, Debug)]
pub enum FrobeniusInput<R: Ring> {
    Hypersurface(HypersurfaceInput<R>),
    DoubleCover(DoubleCoverInput<R>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinaryVerdict {
    pub ordinary: bool,
    /// The coefficient before reduction, formatted in its ring.
    pub exact: String,
    /// Its image in `F_p`.
    pub witness: u64,
}

/// Ordinary iff the Frobenius coefficient (`beta_p`, or the double-cover
/// analogue) is nonzero mod `p`.
pub fn ordinary_test<R: Ring>(input: &FrobeniusInput<R>, p: u64) -> Result<OrdinaryVerdict, StienstraError> {
    if !is_prime(p) {
        return Err(StienstraError::NotPrime(p));
    }
    let (ring, value) = match input {
        FrobeniusInput::Hypersurface(h) => (h.f.ring(), beta(h, p as u32)?),
        FrobeniusInput::DoubleCover(d) => (d.w.ring(), beta_double(d, p)?),
    };
    let witness = ring
        .residue(&value, p)
        .ok_or_else(|| StienstraError::NoReduction { ring: ring.name(), p })?;
    Ok(OrdinaryVerdict { ordinary: witness != 0, exact: ring.format(&value), witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::parse_poly;
    use crate::ring_tower::{Integers, PrimeField, QuadInt, QuadOrder};
    use num_bigint::BigInt;

    fn hyp(s: &str, n: usize) -> HypersurfaceInput<Integers> {
        HypersurfaceInput::new(parse_poly(&Integers, s, n).unwrap()).unwrap()
    }

    #[test]
    fn beta_one_is_one() {
        let h = hyp("x0^3 + x1^3 + x2^3 + 7*x0*x1*x2", 3);
        assert_eq!(beta(&h, 1).unwrap(), BigInt::from(1));
        assert_eq!(beta(&h, 0), Err(StienstraError::ZeroIndex));
    }

    #[test]
    fn quintic_examples() {
        let fermat = hyp("x0^5+x1^5+x2^5+x3^5+x4^5", 5);
        assert_eq!(beta(&fermat, 5).unwrap(), BigInt::from(0));
        let product = hyp("x0*x1*x2*x3*x4", 5);
        assert_eq!(beta(&product, 5).unwrap(), BigInt::from(1));
    }

    #[test]
    fn fermat_cubic_central_terms() {
        // beta_{3a+1} = (3a)!/(a!)^3, zero off that progression
        let h = hyp("x0^3+x1^3+x2^3", 3);
        let got: Vec<i64> = betas(&h, 10).iter().map(|b| b.try_into().unwrap()).collect();
        assert_eq!(got, vec![1, 0, 0, 6, 0, 0, 90, 0, 0, 1680]);
    }

    #[test]
    fn degree_checks() {
        let f = parse_poly(&Integers, "x0^2 + x1^3", 3).unwrap();
        assert!(HypersurfaceInput::new(f).is_err());
        let w = parse_poly(&Integers, "x0^4", 2).unwrap();
        assert!(DoubleCoverInput::new(w).is_ok());
    }

    #[test]
    fn double_cover_examples() {
        let sq = DoubleCoverInput::new(parse_poly(&Integers, "(x0*x1*x2*x3)^2", 4).unwrap()).unwrap();
        assert_eq!(beta_double(&sq, 5).unwrap(), BigInt::from(1));
        let fermat = DoubleCoverInput::new(parse_poly(&Integers, "x0^8+x1^8+x2^8+x3^8", 4).unwrap()).unwrap();
        assert_eq!(beta_double(&fermat, 5).unwrap(), BigInt::from(0));
        assert_eq!(beta_double(&fermat, 2), Err(StienstraError::EvenPrime(2)));
        assert_eq!(beta_double(&fermat, 9), Err(StienstraError::NotPrime(9)));
    }

    #[test]
    fn ordinary_verdicts() {
        let product = FrobeniusInput::Hypersurface(hyp("x0*x1*x2*x3*x4", 5));
        let v = ordinary_test(&product, 5).unwrap();
        assert!(v.ordinary);
        assert_eq!(v.witness, 1);
        let cubic = FrobeniusInput::Hypersurface(hyp("x0^3+x1^3+x2^3", 3));
        assert!(ordinary_test(&cubic, 7).unwrap().ordinary);
        assert!(!ordinary_test(&cubic, 5).unwrap().ordinary);
    }

    #[test]
    fn reduction_commutes_over_the_golden_order() {
        let src = "x0^3 + A*x1^3 + (2-A)*x2^3 + B*x0*x1*x2 + 3*x0^2*x2";
        let over_o = HypersurfaceInput::new(parse_poly(&QuadOrder, src, 3).unwrap()).unwrap();
        let f5 = PrimeField::o_mod_pi();
        let over_f5 = HypersurfaceInput::new(parse_poly(&f5, src, 3).unwrap()).unwrap();
        for m in 1..=8 {
            let exact: QuadInt = beta(&over_o, m).unwrap();
            assert_eq!(QuadOrder.residue(&exact, 5), Some(beta(&over_f5, m).unwrap()));
        }
    }

    #[test]
    fn no_reduction_map_is_an_error() {
        let f7 = PrimeField::new(7);
        let h = HypersurfaceInput::new(parse_poly(&f7, "x0^3+x1^3+x2^3", 3).unwrap()).unwrap();
        assert!(matches!(
            ordinary_test(&FrobeniusInput::Hypersurface(h), 5),
            Err(StienstraError::NoReduction { .. })
        ));
    }
}
