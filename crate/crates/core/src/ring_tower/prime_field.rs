use num_bigint::BigInt;
use num_integer::Integer;

use super::{Domain, Ring};

/// Trial-division primality test; moduli here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field `F_p`, elements stored as residues in `[0, p)`.
///
/// A field obtained as a residue field of `O` remembers the image of `A`, so
/// polynomial literals mentioning `A` and `B` can be read directly over it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    golden: Option<u64>,
}

impl PrimeField {
    /// Panics unless `p` is prime and fits comfortably in 32 bits.
    pub fn new(p: u64) -> Self {
        Self::try_new(p).unwrap_or_else(|| panic!("{p} is not a usable prime"))
    }

    pub fn try_new(p: u64) -> Option<Self> {
        (is_prime(p) && p < (1 << 31)).then_some(Self { p, golden: None })
    }

    /// The residue field `O/pi = F_5`, with `A -> 2`.
    pub fn o_mod_pi() -> Self {
        Self { p: 5, golden: Some(2) }
    }

    /// Attach the image of `A` (a root of `x^2 + x - 1` mod p).
    pub fn with_golden(self, a: u64) -> Self {
        assert_eq!((a * a + a + self.p - 1) % self.p, 0, "{a} is not a root of x^2+x-1 mod {}", self.p);
        Self { golden: Some(a), ..self }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn golden(&self) -> Option<u64> {
        self.golden
    }

    pub fn elem(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a % self.p == 0 {
            return None;
        }
        Some(self.pow(&a, self.p - 2))
    }

    /// All field elements, in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_bigint(&self, n: &BigInt) -> u64 {
        u64::try_from(n.mod_floor(&BigInt::from(self.p))).expect("residue below p")
    }

    fn from_i64(&self, n: i64) -> u64 {
        self.elem(n)
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn is_zero(&self, a: &u64) -> bool {
        a % self.p == 0
    }

    fn name(&self) -> String {
        match self.golden {
            Some(_) if self.p == 5 => "O/pi".into(),
            _ => format!("F{}", self.p),
        }
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn constant(&self, name: &str) -> Option<u64> {
        let a = self.golden?;
        match name {
            "A" => Some(a),
            // B = -1 - A
            "B" => Some(self.sub(&self.neg(&1), &a)),
            _ => None,
        }
    }

    fn residue(&self, x: &u64, p: u64) -> Option<u64> {
        (p == self.p).then_some(*x)
    }
}

impl Domain for PrimeField {
    fn div_exact(&self, a: &u64, b: &u64) -> Option<u64> {
        self.inv(*b).map(|inv| self.mul(a, &inv))
    }

    fn normalize(&self, v: &mut [u64]) {
        if let Some(lead) = v.iter().find(|x| **x != 0).copied() {
            let inv = self.inv(lead).expect("nonzero in a field");
            for x in v.iter_mut() {
                *x = self.mul(x, &inv);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::try_new(9).is_none());
        assert!(PrimeField::try_new(1).is_none());
        assert!(PrimeField::try_new(13).is_some());
    }

    #[test]
    fn field_axioms_small() {
        let f = PrimeField::new(7);
        for a in f.elements() {
            assert_eq!(f.add(&a, &f.neg(&a)), 0);
            if a != 0 {
                assert_eq!(f.mul(&a, &f.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn golden_constants_mod_pi() {
        let f = PrimeField::o_mod_pi();
        assert_eq!(f.constant("A"), Some(2));
        assert_eq!(f.constant("B"), Some(2));
        assert_eq!(PrimeField::new(5).constant("A"), None);
    }
}
