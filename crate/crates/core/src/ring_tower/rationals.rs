use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Ring;

/// The field of rational numbers; used for formal-group logarithms, whose
/// coefficients `beta_m / m` carry denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn name(&self) -> String {
        "Q".into()
    }

    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }

    /// Defined when the denominator is prime to `p`.
    fn residue(&self, x: &BigRational, p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let den = x.denom().mod_floor(&pb);
        if den.is_zero() {
            return None;
        }
        let num = u64::try_from(x.numer().mod_floor(&pb)).ok()?;
        let den = u64::try_from(den).ok()?;
        // den^(p-2) is the inverse mod p
        let f = super::PrimeField::try_new(p)?;
        Some(f.mul(&num, &f.inv(den)?))
    }
}
