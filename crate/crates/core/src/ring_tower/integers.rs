use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Domain, Ring};

/// The ring of rational integers, arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn name(&self) -> String {
        "Z".into()
    }

    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }

    fn residue(&self, x: &BigInt, p: u64) -> Option<u64> {
        let r = x.mod_floor(&BigInt::from(p));
        Some(u64::try_from(r).expect("residue below p"))
    }
}

impl Domain for Integers {
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }

    fn normalize(&self, v: &mut [BigInt]) {
        let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return;
        }
        let lead_negative = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
        let g = if lead_negative { -g } else { g };
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division() {
        let z = Integers;
        assert_eq!(z.div_exact(&BigInt::from(-12), &BigInt::from(4)), Some(BigInt::from(-3)));
        assert_eq!(z.div_exact(&BigInt::from(7), &BigInt::from(2)), None);
        assert_eq!(z.div_exact(&BigInt::from(7), &BigInt::from(0)), None);
    }

    #[test]
    fn normalize_makes_primitive_positive() {
        let z = Integers;
        let mut v: Vec<BigInt> = [0, -4, 6, 2].iter().map(|&x| BigInt::from(x)).collect();
        z.normalize(&mut v);
        let w: Vec<BigInt> = [0, 2, -3, -1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(v, w);
    }

    #[test]
    fn residues_are_nonnegative() {
        assert_eq!(Integers.residue(&BigInt::from(-1), 5), Some(4));
    }
}
