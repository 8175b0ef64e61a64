//! Ordinarity and height of plane cubics against a point count.
//!
//! A smooth cubic is built as a Weierstrass curve `y^2 z = x^3 + a x z^2 + b z^3`
//! pulled back along a random invertible linear map. The oracle counts
//! affine solutions of the Weierstrass equation directly; the curve is
//! ordinary exactly when `a_p = p + 1 - #E(F_p)` is nonzero mod `p`.

use cy3kit::formal_group::{height, Height, LogSeries};
use cy3kit::multipoly::SparsePoly;
use cy3kit::ring_tower::{Integers, Rationals};
use cy3kit::stienstra::{betas, ordinary_test, FrobeniusInput, HypersurfaceInput};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn trace(p: i64, a: i64, b: i64) -> i64 {
    let mut affine = 0;
    for x in 0..p {
        for y in 0..p {
            if (y * y - x * x * x - a * x - b).rem_euclid(p) == 0 {
                affine += 1;
            }
        }
    }
    p + 1 - (affine + 1)
}

fn smooth(p: i64, a: i64, b: i64) -> bool {
    (4 * a * a * a + 27 * b * b).rem_euclid(p) != 0
}

fn det3(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// `W(M v)` for the Weierstrass cubic `W`, as an integer polynomial.
fn transformed(a: i64, b: i64, m: &[[i64; 3]; 3]) -> SparsePoly<Integers> {
    let z = Integers;
    let c = |k: i64| SparsePoly::constant(&z, 3, BigInt::from(k));
    let lin: Vec<SparsePoly<Integers>> = m
        .iter()
        .map(|row| (0..3).fold(SparsePoly::zero(&z, 3), |acc, j| acc.add(&SparsePoly::var(&z, 3, j).scale(&BigInt::from(row[j])))))
        .collect();
    let (x, y, w) = (&lin[0], &lin[1], &lin[2]);
    y.mul(y).mul(w).sub(&x.mul(x).mul(x)).sub(&c(a).mul(x).mul(w).mul(w)).sub(&c(b).mul(w).mul(w).mul(w))
}

fn random_invertible(rng: &mut StdRng, p: i64) -> [[i64; 3]; 3] {
    loop {
        let mut m = [[0; 3]; 3];
        for row in m.iter_mut() {
            for e in row.iter_mut() {
                *e = rng.gen_range(-3..=3);
            }
        }
        if det3(&m).rem_euclid(p) != 0 {
            return m;
        }
    }
}

/// Random smooth curves plus one supersingular curve found by search.
fn sample(p: i64, rng: &mut StdRng) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    while out.len() < 6 {
        let (a, b) = (rng.gen_range(0..p), rng.gen_range(0..p));
        if smooth(p, a, b) {
            out.push((a, b));
        }
    }
    let ss = (0..p)
        .flat_map(|a| (0..p).map(move |b| (a, b)))
        .find(|&(a, b)| smooth(p, a, b) && trace(p, a, b) % p == 0)
        .expect("supersingular curves exist over F_p");
    out.push(ss);
    out
}

#[test]
fn ordinary_test_agrees_with_point_counts() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for p in [5i64, 7, 11, 13] {
        let mut seen = [false; 2];
        for (a, b) in sample(p, &mut rng) {
            let m = random_invertible(&mut rng, p);
            let f = transformed(a, b, &m);
            let input = FrobeniusInput::Hypersurface(HypersurfaceInput::new(f).unwrap());
            let verdict = ordinary_test(&input, p as u64).unwrap();
            let expected = trace(p, a, b) % p != 0;
            assert_eq!(verdict.ordinary, expected, "p = {p}, a = {a}, b = {b}, M = {m:?}");
            seen[expected as usize] = true;
        }
        assert_eq!(seen, [true, true], "p = {p} should exercise both verdicts");
    }
}

fn cubic_log(f: SparsePoly<Integers>, t: u32) -> LogSeries<Rationals> {
    let h = HypersurfaceInput::new(f).unwrap();
    LogSeries::from_integers(&LogSeries::new(&Integers, betas(&h, t)).unwrap())
}

#[test]
fn height_one_exactly_when_ordinary() {
    let mut rng = StdRng::seed_from_u64(7);
    // full height at p = 5; at p = 7 only the first step, to keep the series short
    for (p, h_max) in [(5i64, 2u32), (7, 1)] {
        for (a, b) in sample(p, &mut rng).into_iter().skip(3) {
            let m = random_invertible(&mut rng, p);
            let l = cubic_log(transformed(a, b, &m), p.pow(h_max) as u32 + 1);
            let r = height(&l, p as u64, h_max).unwrap();
            let expected = match (trace(p, a, b) % p != 0, h_max) {
                (true, _) => Height::Finite(1),
                (false, 1) => Height::AtLeast(2),
                (false, _) => Height::Finite(2),
            };
            assert_eq!(r.height, expected, "p = {p}, a = {a}, b = {b}");
        }
    }
}

#[test]
fn fermat_cubic_at_two_has_height_two() {
    // x^3 + y^3 + z^3 over F_2: count projective points by brute force
    let count = (0..8u32)
        .filter(|&v| v != 0)
        .filter(|&v| ((v & 1) + (v >> 1 & 1) + (v >> 2 & 1)) % 2 == 0)
        .count() as i64;
    let a2 = 2 + 1 - count;
    assert_eq!(a2, 0);
    let z = Integers;
    let fermat = (0..3).fold(SparsePoly::zero(&z, 3), |acc, i| acc.add(&SparsePoly::var(&z, 3, i).pow(3)));
    let r = height(&cubic_log(fermat, 5), 2, 2).unwrap();
    assert_eq!(r.height, Height::Finite(2));
    assert!(r.cross_checked);
}
