//! Arithmetic in `Z[zeta_d] = Z[x] / Phi_d(x)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Coefficients low to high.
pub fn cyclotomic_poly(d: u32) -> Vec<BigInt> {
    // x^d - 1 = prod_{e | d} Phi_e
    let mut num = vec![BigInt::zero(); d as usize + 1];
    num[0] = -BigInt::one();
    num[d as usize] = BigInt::one();
    for e in (1..d).filter(|e| d % e == 0) {
        num = div_exact_monic(&num, &cyclotomic_poly(e));
    }
    num
}

fn div_exact_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db].clone();
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

/// `Z[zeta_d]` with elements as coefficient vectors of length `phi(d)`.
pub struct CyclotomicRing {
    phi: Vec<BigInt>,
    /// `zeta^k` for `k` in `0..d`.
    powers: Vec<Vec<BigInt>>,
}

impl CyclotomicRing {
    pub fn new(d: u32) -> Self {
        let phi = cyclotomic_poly(d);
        let deg = phi.len() - 1;
        let mut ring = CyclotomicRing { phi, powers: Vec::new() };
        let mut z = vec![BigInt::zero(); deg];
        z[0] = BigInt::one();
        for _ in 0..d {
            ring.powers.push(z.clone());
            z = ring.times_x(&z);
        }
        ring
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.degree()]
    }

    pub fn from_int(&self, n: i64) -> Vec<BigInt> {
        let mut v = self.zero();
        v[0] = BigInt::from(n);
        v
    }

    fn times_x(&self, a: &[BigInt]) -> Vec<BigInt> {
        let deg = self.degree();
        let mut out = vec![BigInt::zero(); deg];
        let top = a[deg - 1].clone();
        for i in (1..deg).rev() {
            out[i] = a[i - 1].clone();
        }
        // x^deg = -(phi_0 + ... + phi_{deg-1} x^{deg-1})
        for (i, o) in out.iter_mut().enumerate() {
            *o -= &top * &self.phi[i];
        }
        out
    }

    pub fn zeta_pow(&self, k: u64) -> &[BigInt] {
        &self.powers[(k % self.powers.len() as u64) as usize]
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut acc = self.zero();
        for c in b.iter().rev() {
            acc = self.times_x(&acc);
            for (o, x) in acc.iter_mut().zip(a) {
                *o += x * c;
            }
        }
        acc
    }

    /// `Some(n)` when the element is the rational integer `n`.
    pub fn as_integer(&self, a: &[BigInt]) -> Option<BigInt> {
        a[1..].iter().all(Zero::is_zero).then(|| a[0].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_poly(5), ints(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_poly(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn zeta_has_order_d() {
        for d in 1..=12 {
            let r = CyclotomicRing::new(d);
            let mut z = r.from_int(1);
            for _ in 0..d {
                z = r.mul(&z, r.zeta_pow(1));
            }
            assert_eq!(r.as_integer(&z), Some(BigInt::one()), "d = {d}");
            // 1 + zeta + ... + zeta^{d-1} = 0 for d > 1
            let s = (0..d as u64).fold(r.zero(), |acc, k| r.add(&acc, r.zeta_pow(k)));
            assert_eq!(r.as_integer(&s), Some(BigInt::from(if d == 1 { 1 } else { 0 })));
        }
    }
}
