use num_bigint::BigInt;

use super::Ring;

/// Largest supported truncation `eps^n = 0`.
pub const MAX_DUAL_ORDER: usize = 4;

/// `R[eps]/eps^n`, elements stored as coefficient vectors `c_0..c_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualNumbers<R: Ring> {
    base: R,
    n: usize,
}

impl<R: Ring> DualNumbers<R> {
    /// Panics unless `1 <= n <= 4`.
    pub fn new(base: R, n: usize) -> Self {
        Self::try_new(base, n).unwrap_or_else(|| panic!("dual order {n} outside 1..={MAX_DUAL_ORDER}"))
    }

    pub fn try_new(base: R, n: usize) -> Option<Self> {
        (1..=MAX_DUAL_ORDER).contains(&n).then_some(Self { base, n })
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn from_coeffs(&self, coeffs: &[R::Elem]) -> Vec<R::Elem> {
        let mut v: Vec<R::Elem> = coeffs.iter().take(self.n).cloned().collect();
        v.resize(self.n, self.base.zero());
        v
    }

    pub fn embed(&self, c: &R::Elem) -> Vec<R::Elem> {
        self.from_coeffs(std::slice::from_ref(c))
    }

    /// `eps` itself (zero when `n = 1`).
    pub fn eps(&self) -> Vec<R::Elem> {
        let mut v = vec![self.base.zero(); self.n];
        if self.n > 1 {
            v[1] = self.base.one();
        }
        v
    }
}

impl<R: Ring> Ring for DualNumbers<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.n]
    }

    fn one(&self) -> Self::Elem {
        self.embed(&self.base.one())
    }

    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        self.embed(&self.base.from_bigint(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(self.n - i) {
                out[i + j] = self.base.add(&out[i + j], &self.base.mul(x, y));
            }
        }
        out
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }

    fn name(&self) -> String {
        format!("{}[eps]/eps^{}", self.base.name(), self.n)
    }

    fn format(&self, a: &Self::Elem) -> String {
        let mut parts = Vec::new();
        for (i, c) in a.iter().enumerate() {
            if self.base.is_zero(c) {
                continue;
            }
            let s = self.base.format(c);
            let simple = !s[1..].contains(['+', '-']);
            let eps = match i {
                0 => String::new(),
                1 => "eps".to_string(),
                _ => format!("eps^{i}"),
            };
            parts.push(match (i, s.as_str()) {
                (0, _) => s.clone(),
                (_, "1") => eps,
                (_, "-1") => format!("-{eps}"),
                _ if simple => format!("{s}*{eps}"),
                _ => format!("({s})*{eps}"),
            });
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if p.starts_with('-') {
                out.push_str(p);
            } else {
                out.push('+');
                out.push_str(p);
            }
        }
        out
    }

    fn constant(&self, name: &str) -> Option<Self::Elem> {
        match name {
            "eps" => Some(self.eps()),
            other => self.base.constant(other).map(|c| self.embed(&c)),
        }
    }
}
