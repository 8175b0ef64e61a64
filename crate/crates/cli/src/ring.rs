//! Ring tags on the command line: `Z`, `Q`, `Fp(p)`, `O`, `O-mod-pi`, `dual(R, n)`.

use std::fmt;
use std::str::FromStr;

use cy3kit::ring_tower::{is_prime, DualNumbers, Integers, PrimeField, QuadInt, QuadOrder, Rationals, Ring, MAX_DUAL_ORDER};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingTag {
    Z,
    Q,
    Fp(u64),
    O,
    OModPi,
    Dual(Box<RingTag>, usize),
}

impl FromStr for RingTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "Z" => return Ok(RingTag::Z),
            "Q" => return Ok(RingTag::Q),
            "O" => return Ok(RingTag::O),
            "O-mod-pi" | "O/pi" => return Ok(RingTag::OModPi),
            _ => {}
        }
        if let Some(inner) = compact.strip_prefix("Fp(").and_then(|r| r.strip_suffix(')')) {
            let p: u64 = inner.parse().map_err(|_| format!("bad prime in {s:?}"))?;
            if !is_prime(p) {
                return Err(format!("{p} is not a prime"));
            }
            return Ok(RingTag::Fp(p));
        }
        if let Some(inner) = compact.strip_prefix("dual(").and_then(|r| r.strip_suffix(')')) {
            let (base, n) = inner.rsplit_once(',').ok_or_else(|| format!("expected dual(R, n), got {s:?}"))?;
            let base: RingTag = base.parse()?;
            if matches!(base, RingTag::Dual(..)) {
                return Err("nested dual numbers are not supported".into());
            }
            let n: usize = n.parse().map_err(|_| format!("bad truncation order in {s:?}"))?;
            if n == 0 || n > MAX_DUAL_ORDER {
                return Err(format!("truncation order must be in 1..={MAX_DUAL_ORDER}"));
            }
            return Ok(RingTag::Dual(Box::new(base), n));
        }
        Err(format!("unknown ring {s:?}; expected Z, Q, Fp(p), O, O-mod-pi or dual(R, n)"))
    }
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Z => write!(f, "Z"),
            RingTag::Q => write!(f, "Q"),
            RingTag::Fp(p) => write!(f, "Fp({p})"),
            RingTag::O => write!(f, "O"),
            RingTag::OModPi => write!(f, "O-mod-pi"),
            RingTag::Dual(b, n) => write!(f, "dual({b}, {n})"),
        }
    }
}

/// Runs `$body` with `$r` bound to the ring named by `$tag`.
#[macro_export]
macro_rules! with_ring {
    ($tag:expr, |$r:ident| $body:expr) => {{
        #[allow(unused_imports)]
        use cy3kit::ring_tower::{DualNumbers, Integers, PrimeField, QuadOrder, Rationals};
        use $crate::ring::RingTag;
        match $tag {
            RingTag::Z => { let $r = Integers; $body }
            RingTag::Q => { let $r = Rationals; $body }
            RingTag::Fp(p) => { let $r = PrimeField::new(*p); $body }
            RingTag::O => { let $r = QuadOrder; $body }
            RingTag::OModPi => { let $r = PrimeField::o_mod_pi(); $body }
            RingTag::Dual(base, n) => match base.as_ref() {
                RingTag::Z => { let $r = DualNumbers::new(Integers, *n); $body }
                RingTag::Q => { let $r = DualNumbers::new(Rationals, *n); $body }
                RingTag::Fp(p) => { let $r = DualNumbers::new(PrimeField::new(*p), *n); $body }
                RingTag::O => { let $r = DualNumbers::new(QuadOrder, *n); $body }
                RingTag::OModPi => { let $r = DualNumbers::new(PrimeField::o_mod_pi(), *n); $body }
                RingTag::Dual(..) => unreachable!("rejected when parsing"),
            },
        }
    }};
}

/// Like [`with_ring!`] for commands that need exact division.
#[macro_export]
macro_rules! with_domain {
    ($tag:expr, |$r:ident| $body:expr) => {{
        use cy3kit::ring_tower::{Integers, PrimeField, QuadOrder};
        use $crate::ring::RingTag;
        match $tag {
            RingTag::Z => { let $r = Integers; $body }
            RingTag::Fp(p) => { let $r = PrimeField::new(*p); $body }
            RingTag::O => { let $r = QuadOrder; $body }
            RingTag::OModPi => { let $r = PrimeField::o_mod_pi(); $body }
            other => Err($crate::report::Failure::malformed(format!("{other} is not supported here; use Z, Fp(p), O or O-mod-pi"))),
        }
    }};
}

/// Element display. Elements of `O` print as `60A+85`.
pub trait Show: Ring {
    fn show(&self, x: &Self::Elem) -> String {
        self.format(x)
    }
}

impl Show for Integers {}
impl Show for Rationals {}
impl Show for PrimeField {}
impl<R: Ring> Show for DualNumbers<R> {}

impl Show for QuadOrder {
    fn show(&self, x: &QuadInt) -> String {
        show_quad(x)
    }
}

pub fn show_quad(q: &QuadInt) -> String {
    let (a, b) = (q.a.to_string(), q.b.to_string());
    let b = match b.as_str() {
        "0" => return a,
        "1" => String::new(),
        "-1" => "-".into(),
        _ => b,
    };
    match a.as_str() {
        "0" => format!("{b}A"),
        _ if a.starts_with('-') => format!("{b}A{a}"),
        _ => format!("{b}A+{a}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for s in ["Z", "Q", "Fp(7)", "O", "O-mod-pi", "dual(Fp(5), 3)", "dual(O, 2)"] {
            let t: RingTag = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
        assert!("Fp(6)".parse::<RingTag>().is_err());
        assert!("dual(dual(Z, 2), 2)".parse::<RingTag>().is_err());
        assert!("dual(Z, 9)".parse::<RingTag>().is_err());
        assert!("R".parse::<RingTag>().is_err());
    }

    #[test]
    fn golden_order_display() {
        assert_eq!(show_quad(&QuadInt::new(85, 60)), "60A+85");
        assert_eq!(show_quad(&QuadInt::new(-3, 1)), "A-3");
        assert_eq!(show_quad(&QuadInt::new(0, -2)), "-2A");
        assert_eq!(show_quad(&QuadInt::new(4, 0)), "4");
    }
}
