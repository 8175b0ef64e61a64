//! Coefficient rings: integers, rationals, prime fields, the order
//! `O = Z[A]/(A^2 + A - 1)` and truncated dual-number extensions.
//!
//! A [`Ring`] value is a *descriptor* (it carries the modulus, the truncation
//! length, ...) and elements are plain data manipulated through it. This keeps
//! elements small and lets polynomials be generic over the ring.

mod dual;
mod integers;
mod prime_field;
mod quadratic;
mod rationals;
mod root_lift;

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;

pub use dual::{DualNumbers, MAX_DUAL_ORDER};
pub use integers::Integers;
pub use prime_field::{is_prime, PrimeField};
pub use quadratic::{reduce_mod_pi, QuadInt, QuadOrder};
pub use rationals::Rationals;
pub use root_lift::{root_lift, LiftError, LiftSet};

/// A commutative unital ring with exact arithmetic.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Short tag used in textual output (`Z`, `F5`, `O`, ...).
    fn name(&self) -> String;

    /// Render an element in the literal syntax accepted by the parser.
    fn format(&self, a: &Self::Elem) -> String;

    /// Named constants understood by the polynomial parser (`A`, `B`, `eps`).
    fn constant(&self, _name: &str) -> Option<Self::Elem> {
        None
    }

    /// Image of `x` in `F_p` under a fixed residue map, if this ring has one.
    fn residue(&self, _x: &Self::Elem, _p: u64) -> Option<u64> {
        None
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// An integral domain with exact division.
pub trait Domain: Ring {
    /// `a / b` when `b` divides `a`, `None` otherwise (including `b = 0`).
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// Rescale a nonzero vector to a canonical projective representative.
    fn normalize(&self, v: &mut [Self::Elem]);
}
