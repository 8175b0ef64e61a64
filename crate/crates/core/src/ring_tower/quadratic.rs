use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Domain, Ring};

/// `a + b*A` in `O = Z[A]/(A^2 + A - 1)`.
///
/// `A` and `B = -1 - A` are the two roots of `x^2 + x - 1`; `pi = 2A + 1`
/// squares to 5 and generates the unique prime above 5.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QuadInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self { a: a.into(), b: b.into() }
    }

    /// The generator `A`.
    pub fn golden() -> Self {
        Self::new(0, 1)
    }

    /// The other root `B = -1 - A`.
    pub fn golden_conjugate() -> Self {
        Self::new(-1, -1)
    }

    /// `pi = 2A + 1`.
    pub fn pi() -> Self {
        Self::new(1, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Galois conjugation `A <-> B`.
    pub fn conj(&self) -> Self {
        Self { a: &self.a - &self.b, b: -&self.b }
    }

    /// `x * conj(x) = a^2 - ab - b^2`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b - &self.b * &self.b
    }

    /// Sum of squares of the two real embeddings, `2a^2 - 2ab + 3b^2`.
    fn embedding_size(&self) -> BigInt {
        BigInt::from(2) * &self.a * &self.a - BigInt::from(2) * &self.a * &self.b
            + BigInt::from(3) * &self.b * &self.b
    }

    fn mul_ref(&self, o: &Self) -> Self {
        let bd = &self.b * &o.b;
        Self {
            a: &self.a * &o.a + &bd,
            b: &self.a * &o.b + &self.b * &o.a - bd,
        }
    }

    fn neg_ref(&self) -> Self {
        Self { a: -&self.a, b: -&self.b }
    }

    /// Euclidean division with rounded quotient; `|N(r)| < |N(d)|`.
    fn div_rem_euclid(&self, d: &Self) -> (Self, Self) {
        let n = d.norm();
        let num = self.mul_ref(&d.conj());
        let q = Self { a: round_div(&num.a, &n), b: round_div(&num.b, &n) };
        let r = Self { a: &self.a - &q.mul_ref(d).a, b: &self.b - &q.mul_ref(d).b };
        (q, r)
    }

    fn gcd(&self, other: &Self) -> Self {
        let (mut x, mut y) = (self.clone(), other.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem_euclid(&y);
            x = y;
            y = r;
        }
        x
    }

    fn positive(&self) -> bool {
        self.a.is_positive() || (self.a.is_zero() && self.b.is_positive())
    }
}

fn round_div(x: &BigInt, n: &BigInt) -> BigInt {
    // floor((2x + n) / 2n) for n > 0, mirrored for n < 0
    let (x, n) = if n.is_negative() { (-x, -n) } else { (x.clone(), n.clone()) };
    (BigInt::from(2) * x + &n).div_floor(&(BigInt::from(2) * n))
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b_term = |f: &mut fmt::Formatter<'_>, b: &BigInt, lead: bool| -> fmt::Result {
            let sign = if b.is_negative() { "-" } else if lead { "" } else { "+" };
            if b.abs().is_one() {
                write!(f, "{sign}A")
            } else {
                write!(f, "{sign}{}*A", b.abs())
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => b_term(f, &self.b, true),
            (false, false) => {
                write!(f, "{}", self.a)?;
                b_term(f, &self.b, false)
            }
        }
    }
}

impl FromStr for QuadInt {
    type Err = crate::multipoly::ParseError;

    /// Accepts `a+b*A` style literals (any expression in `A`, `B`, integers).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::multipoly::parse_scalar(&QuadOrder, s)
    }
}

/// Reduction `O -> O/pi = F_5`, sending `A` to 2 (the double root of
/// `x^2 + x - 1` mod 5).
pub fn reduce_mod_pi(x: &QuadInt) -> u64 {
    let r = (&x.a + BigInt::from(2) * &x.b).mod_floor(&BigInt::from(5));
    u64::try_from(r).expect("residue below 5")
}

/// The ring `O` of integers of `Q(sqrt 5)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QuadOrder;

impl QuadOrder {
    /// The residue-field image of `A` for a prime `p` that has a degree-one
    /// prime of `O` above it: the smallest root of `x^2 + x - 1` mod p.
    pub fn golden_root_mod(p: u64) -> Option<u64> {
        (0..p).find(|&r| (r * r + r + p - 1) % p == 0)
    }
}

impl Ring for QuadOrder {
    type Elem = QuadInt;

    fn zero(&self) -> QuadInt {
        QuadInt::default()
    }

    fn one(&self) -> QuadInt {
        QuadInt::new(1, 0)
    }

    fn from_bigint(&self, n: &BigInt) -> QuadInt {
        QuadInt { a: n.clone(), b: BigInt::zero() }
    }

    fn add(&self, x: &QuadInt, y: &QuadInt) -> QuadInt {
        QuadInt { a: &x.a + &y.a, b: &x.b + &y.b }
    }

    fn neg(&self, x: &QuadInt) -> QuadInt {
        x.neg_ref()
    }

    fn sub(&self, x: &QuadInt, y: &QuadInt) -> QuadInt {
        QuadInt { a: &x.a - &y.a, b: &x.b - &y.b }
    }

    fn mul(&self, x: &QuadInt, y: &QuadInt) -> QuadInt {
        x.mul_ref(y)
    }

    fn is_zero(&self, x: &QuadInt) -> bool {
        x.is_zero()
    }

    fn name(&self) -> String {
        "O".into()
    }

    fn format(&self, x: &QuadInt) -> String {
        x.to_string()
    }

    fn constant(&self, name: &str) -> Option<QuadInt> {
        match name {
            "A" => Some(QuadInt::golden()),
            "B" => Some(QuadInt::golden_conjugate()),
            "pi" => Some(QuadInt::pi()),
            _ => None,
        }
    }

    /// Uses the prime above `p` on which `A` maps to the smallest root of
    /// `x^2 + x - 1`; for `p = 5` this is `reduce_mod_pi`.
    fn residue(&self, x: &QuadInt, p: u64) -> Option<u64> {
        let r = Self::golden_root_mod(p)?;
        let v = (&x.a + BigInt::from(r) * &x.b).mod_floor(&BigInt::from(p));
        Some(u64::try_from(v).expect("residue below p"))
    }
}

impl Domain for QuadOrder {
    fn div_exact(&self, x: &QuadInt, d: &QuadInt) -> Option<QuadInt> {
        if d.is_zero() {
            return None;
        }
        let n = d.norm();
        let num = x.mul_ref(&d.conj());
        let (qa, ra) = num.a.div_rem(&n);
        let (qb, rb) = num.b.div_rem(&n);
        (ra.is_zero() && rb.is_zero()).then_some(QuadInt { a: qa, b: qb })
    }

    /// Divides by the gcd of the entries (O is norm-Euclidean), then moves
    /// the leading entry into a fixed fundamental domain for the unit group
    /// `{±A^k}`: minimal embedding size, ties broken by the larger `(a, b)`,
    /// sign chosen positive.
    fn normalize(&self, v: &mut [QuadInt]) {
        let g = v.iter().fold(QuadInt::default(), |g, x| g.gcd(x));
        if g.is_zero() {
            return;
        }
        for x in v.iter_mut() {
            *x = self.div_exact(x, &g).expect("gcd divides every entry");
        }
        let lead_idx = v.iter().position(|x| !x.is_zero()).expect("nonzero vector");
        let a = QuadInt::golden();
        let a_inv = QuadInt::new(1, 1);
        let mut lead = v[lead_idx].clone();
        let mut unit = self.one();
        loop {
            let s = lead.embedding_size();
            if lead.mul_ref(&a).embedding_size() < s {
                lead = lead.mul_ref(&a);
                unit = unit.mul_ref(&a);
            } else if lead.mul_ref(&a_inv).embedding_size() < s {
                lead = lead.mul_ref(&a_inv);
                unit = unit.mul_ref(&a_inv);
            } else {
                break;
            }
        }
        let signed = |x: QuadInt| if x.positive() { x } else { x.neg_ref() };
        let key = |x: &QuadInt| (x.a.clone(), x.b.clone());
        let s = lead.embedding_size();
        let mut best = (signed(lead.clone()), unit.clone());
        for step in [&a, &a_inv] {
            let cand = lead.mul_ref(step);
            if cand.embedding_size() == s {
                let cand = signed(cand);
                if key(&cand) > key(&best.0) {
                    best = (cand, unit.mul_ref(step));
                }
            }
        }
        let mut unit = best.1;
        let chosen_lead = v[lead_idx].mul_ref(&unit);
        if !chosen_lead.positive() {
            unit = unit.neg_ref();
        }
        for x in v.iter_mut() {
            *x = x.mul_ref(&unit);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> QuadInt {
        QuadInt::new(a, b)
    }

    #[test]
    fn golden_identities() {
        let o = QuadOrder;
        let a = QuadInt::golden();
        let b = QuadInt::golden_conjugate();
        assert_eq!(o.mul(&a, &a), o.sub(&o.one(), &a));
        assert_eq!(o.add(&a, &b), q(-1, 0));
        assert_eq!(o.mul(&a, &b), q(-1, 0));
        assert_eq!(o.mul(&QuadInt::pi(), &QuadInt::pi()), q(5, 0));
        assert_eq!(QuadInt::pi().norm(), BigInt::from(-5));
        assert_eq!(o.mul(&QuadInt::pi(), &QuadInt::pi().conj()), q(-5, 0));
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_mod_pi(&q(85, 60)), 0);
        assert_eq!(reduce_mod_pi(&QuadInt::golden()), 2);
        assert_eq!(reduce_mod_pi(&q(1, 0)), 1);
        assert_eq!(reduce_mod_pi(&QuadInt::pi()), 0);
        assert_eq!(QuadOrder.residue(&q(85, 60), 5), Some(0));
        // 2 is inert in O
        assert_eq!(QuadOrder.residue(&q(1, 1), 2), None);
    }

    #[test]
    fn exact_division_and_gcd() {
        let o = QuadOrder;
        let x = q(7, -3);
        let y = q(2, 5);
        let prod = o.mul(&x, &y);
        assert_eq!(o.div_exact(&prod, &y), Some(x.clone()));
        assert_eq!(o.div_exact(&q(1, 0), &QuadInt::pi()), None);
        let g = prod.gcd(&o.mul(&y, &q(3, 1)));
        // g is an associate of y times the gcd of x and 3+A
        assert!(o.div_exact(&g, &y).is_some());
    }

    #[test]
    fn normalize_is_projectively_canonical() {
        let o = QuadOrder;
        let v = vec![q(0, 0), q(3, 1), q(-2, 7), q(1, 0)];
        let mut base = v.clone();
        o.normalize(&mut base);
        for scale in [q(-1, 0), q(0, 1), q(1, 1), q(2, 3), QuadInt::pi(), q(-4, 9)] {
            let mut w: Vec<QuadInt> = v.iter().map(|x| o.mul(x, &scale)).collect();
            o.normalize(&mut w);
            assert_eq!(w, base, "scale {scale}");
        }
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(q(85, 60).to_string(), "85+60*A");
        assert_eq!(q(0, -1).to_string(), "-A");
        assert_eq!(q(-2, 1).to_string(), "-2+A");
        assert_eq!("85+60*A".parse::<QuadInt>().unwrap(), q(85, 60));
        assert_eq!("60*A + 85".parse::<QuadInt>().unwrap(), q(85, 60));
        assert_eq!("B".parse::<QuadInt>().unwrap(), q(-1, -1));
    }
}
