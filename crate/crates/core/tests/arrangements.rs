use std::time::Instant;

use cy3kit::arrangement::{incidence, reduction_compare, verify_points, Arrangement};
use cy3kit::fixtures::{get, read_forms, read_points, read_poly};
use cy3kit::ring_tower::{reduce_mod_pi, Domain, Integers, QuadInt, QuadOrder, Ring};
use cy3kit::stienstra::{beta_double, DoubleCoverInput};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn det4(m: &[[i64; 4]; 4]) -> i64 {
    let minor = |skip_row: usize, skip_col: usize| {
        let rows: Vec<usize> = (0..4).filter(|&r| r != skip_row).collect();
        let cols: Vec<usize> = (0..4).filter(|&c| c != skip_col).collect();
        let e = |r: usize, c: usize| m[rows[r]][cols[c]];
        e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
            + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
    };
    (0..4).map(|c| if c % 2 == 0 { m[0][c] * minor(0, c) } else { -m[0][c] * minor(0, c) }).sum()
}

fn to_big(planes: &[[i64; 4]]) -> Vec<Vec<BigInt>> {
    planes.iter().map(|p| p.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Planes with every 4 independent: every triple meets in a point on no other plane.
fn generic_planes(rng: &mut StdRng, n: usize) -> Vec<[i64; 4]> {
    'retry: loop {
        let planes: Vec<[i64; 4]> = (0..n).map(|_| std::array::from_fn(|_| rng.gen_range(-9..=9))).collect();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        if det4(&[planes[i], planes[j], planes[k], planes[l]]) == 0 {
                            continue 'retry;
                        }
                    }
                }
            }
        }
        return planes;
    }
}

#[test]
fn generic_octic_pattern() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..3 {
        let planes = generic_planes(&mut rng, 8);
        let r = incidence(&Arrangement::new(&Integers, to_big(&planes)).unwrap());
        assert_eq!(r.double_lines(), 28);
        assert_eq!(r.lines.len(), 28);
        assert_eq!(r.points_of_multiplicity(3), 56);
        assert_eq!(r.points.len(), 56);
    }
}

#[test]
fn cvs_octic_coefficient() {
    let start = Instant::now();
    let w = read_poly(&QuadOrder, get("cvs_octic").unwrap()).unwrap();
    let b = beta_double(&DoubleCoverInput::new(w).unwrap(), 5).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(b, QuadInt::new(85, 60));
    assert_eq!(QuadOrder.format(&b), "85+60*A");
    assert_eq!(reduce_mod_pi(&b), 0);
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
}

#[test]
fn cvs_pattern_from_fixtures() {
    let start = Instant::now();
    let o = QuadOrder;
    let a = Arrangement::from_forms(&o, &read_forms(&o, get("cvs_arrangement").unwrap()).unwrap()).unwrap();
    let r = incidence(&a);
    assert_eq!((r.double_lines(), r.triple_lines()), (28, 0));
    assert_eq!((r.points_of_multiplicity(4), r.points_of_multiplicity(5)), (9, 0));
    let pts = read_points(&o, get("cvs_points").unwrap()).unwrap();
    assert_eq!(verify_points(&a, &pts).unwrap(), vec![4; 9]);
    assert!(reduction_compare(&a, 5).unwrap().same);
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

/// `a -> a U` for every plane, i.e. the coordinate change `x -> U^{-1} x`.
fn transform<R: Domain>(ring: &R, planes: &[Vec<R::Elem>], u: &[[i64; 4]; 4]) -> Vec<Vec<R::Elem>> {
    planes
        .iter()
        .map(|a| {
            (0..4)
                .map(|c| (0..4).fold(ring.zero(), |acc, r| ring.add(&acc, &ring.mul(&a[r], &ring.from_i64(u[r][c])))))
                .collect()
        })
        .collect()
}

fn unimodular(ops: &[(usize, usize, i64)]) -> [[i64; 4]; 4] {
    let mut u = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
    for &(i, j, k) in ops {
        if i != j {
            for row in u.iter_mut() {
                row[j] += k * row[i];
            }
        }
    }
    u
}

fn ops() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0usize..4, 0usize..4, -2i64..=2), 1..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn pattern_is_invariant_under_unimodular_maps(seed in prop::collection::vec(prop::array::uniform4(-2i64..=2), 4..=7), ops in ops()) {
        let mut planes = Vec::new();
        for p in seed {
            if p.iter().any(|&x| x != 0) && Arrangement::new(&Integers, to_big(&[p])).is_ok() {
                let mut cand = planes.clone();
                cand.push(p);
                if Arrangement::new(&Integers, to_big(&cand)).is_ok() {
                    planes = cand;
                }
            }
        }
        prop_assume!(planes.len() >= 3);
        let u = unimodular(&ops);
        let z = Integers;
        let a = Arrangement::new(&z, to_big(&planes)).unwrap();
        let b = Arrangement::new(&z, transform(&z, &to_big(&planes), &u)).unwrap();
        prop_assert_eq!(incidence(&a).labels(), incidence(&b).labels());
    }

    #[test]
    fn every_pair_of_planes_lies_on_exactly_one_line(seed in prop::collection::vec(prop::array::uniform4(-2i64..=2), 2..=8)) {
        let mut planes: Vec<[i64; 4]> = Vec::new();
        for p in seed {
            let mut cand = planes.clone();
            cand.push(p);
            if Arrangement::new(&Integers, to_big(&cand)).is_ok() {
                planes = cand;
            }
        }
        prop_assume!(planes.len() >= 2);
        let n = planes.len();
        let r = incidence(&Arrangement::new(&Integers, to_big(&planes)).unwrap());
        let pairs: usize = r.lines.iter().map(|l| l.multiplicity() * (l.multiplicity() - 1) / 2).sum();
        prop_assert_eq!(pairs, n * (n - 1) / 2);
    }

    #[test]
    fn cvs_pattern_survives_integral_coordinate_changes(ops in ops()) {
        let o = QuadOrder;
        let a = Arrangement::from_forms(&o, &read_forms(&o, get("cvs_arrangement").unwrap()).unwrap()).unwrap();
        let b = Arrangement::new(&o, transform(&o, a.planes(), &unimodular(&ops))).unwrap();
        prop_assert_eq!(incidence(&a).labels(), incidence(&b).labels());
    }
}
