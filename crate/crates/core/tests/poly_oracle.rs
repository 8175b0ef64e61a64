//! Sparse powering against a naive map-based oracle.

use std::collections::HashMap;

use cy3kit::multipoly::{Monomial, SparsePoly};
use cy3kit::ring_tower::{Integers, PrimeField, Ring};
use num_bigint::BigInt;
use proptest::prelude::*;

type Dense = HashMap<Vec<u16>, BigInt>;

fn naive_mul(a: &Dense, b: &Dense) -> Dense {
    let mut out = Dense::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| *c != BigInt::from(0));
    out
}

fn naive_pow(a: &Dense, nvars: usize, m: u32) -> Dense {
    let mut acc = Dense::from([(vec![0; nvars], BigInt::from(1))]);
    for _ in 0..m {
        acc = naive_mul(&acc, a);
    }
    acc
}

/// `(nvars, terms)` with every term of total degree at most 4.
fn poly_strategy() -> impl Strategy<Value = (usize, Vec<(Vec<u16>, i64)>)> {
    (1usize..=6).prop_flat_map(|n| {
        let term = (prop::collection::vec(0..n, 0..=4), -5i64..=5).prop_map(move |(vars, c)| {
            let mut e = vec![0u16; n];
            for v in vars {
                e[v] += 1;
            }
            (e, c)
        });
        (Just(n), prop::collection::vec(term, 1..=5))
    })
}

fn build(n: usize, terms: &[(Vec<u16>, i64)]) -> (SparsePoly<Integers>, Dense) {
    let f = SparsePoly::from_terms(&Integers, n, terms.iter().map(|(e, c)| (Monomial::new(e.clone()), BigInt::from(*c))));
    let mut d = Dense::new();
    for (e, c) in terms {
        *d.entry(e.clone()).or_default() += *c;
    }
    d.retain(|_, c| *c != BigInt::from(0));
    (f, d)
}

fn as_dense(f: &SparsePoly<Integers>) -> Dense {
    f.terms().map(|(m, c)| (m.exps().to_vec(), c.clone())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn pow_matches_repeated_multiplication((n, terms) in poly_strategy(), m in 0u32..=4) {
        let (f, d) = build(n, &terms);
        prop_assert_eq!(as_dense(&f.pow(m)), naive_pow(&d, n, m));
    }

    #[test]
    fn pow_bounded_is_the_capped_power(
        (n, terms) in poly_strategy(),
        m in 0u32..=4,
        cap_seed in prop::collection::vec(0u16..=16, 6),
    ) {
        let (f, d) = build(n, &terms);
        let cap = Monomial::new(cap_seed[..n].to_vec());
        let mut expected = naive_pow(&d, n, m);
        expected.retain(|e, _| e.iter().zip(cap.exps()).all(|(x, c)| x <= c));
        let got = f.pow_bounded(m, &cap);
        prop_assert_eq!(as_dense(&got), expected.clone());
        // single-coefficient reads agree too
        for (e, c) in &expected {
            prop_assert_eq!(&got.coeff(&Monomial::new(e.clone())), c);
        }
    }

    #[test]
    fn pow_truncated_is_the_low_degree_part((n, terms) in poly_strategy(), m in 0u32..=4, deg in 0u32..=12) {
        let (f, d) = build(n, &terms);
        let mut expected = naive_pow(&d, n, m);
        expected.retain(|e, _| e.iter().map(|&x| x as u32).sum::<u32>() <= deg);
        prop_assert_eq!(as_dense(&f.pow_truncated(m, deg)), expected);
    }

    #[test]
    fn reduction_commutes_with_powers((n, terms) in poly_strategy(), m in 0u32..=4) {
        let (f, _) = build(n, &terms);
        let f7 = PrimeField::new(7);
        let red = |g: &SparsePoly<Integers>| g.map_coeffs(&f7, |c| Integers.residue(c, 7).unwrap());
        prop_assert_eq!(red(&f.pow(m)), red(&f).pow(m));
    }
}
