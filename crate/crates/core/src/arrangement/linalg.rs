//! Fraction-free elimination over an integral domain.

use crate::ring_tower::Domain;

/// Rank by Bareiss elimination; every division is exact.
pub fn rank<R: Domain>(ring: &R, rows: &[Vec<R::Elem>]) -> usize {
    let mut m: Vec<Vec<R::Elem>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = ring.one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| !ring.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, piv);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let num = ring.sub(&ring.mul(&m[r][c], &m[i][j]), &ring.mul(&m[i][c], &m[r][j]));
                m[i][j] = ring.div_exact(&num, &prev).expect("Bareiss division is exact in a domain");
            }
            m[i][c] = ring.zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

pub fn det3<R: Domain>(ring: &R, m: [[&R::Elem; 3]; 3]) -> R::Elem {
    let minor = |a: &R::Elem, b: &R::Elem, c: &R::Elem, d: &R::Elem| ring.sub(&ring.mul(a, d), &ring.mul(b, c));
    let t0 = ring.mul(m[0][0], &minor(m[1][1], m[1][2], m[2][1], m[2][2]));
    let t1 = ring.mul(m[0][1], &minor(m[1][0], m[1][2], m[2][0], m[2][2]));
    let t2 = ring.mul(m[0][2], &minor(m[1][0], m[1][1], m[2][0], m[2][1]));
    ring.add(&ring.sub(&t0, &t1), &t2)
}

/// Kernel of a rank-3 `3 x 4` matrix via signed maximal minors.
pub fn kernel_3x4<R: Domain>(ring: &R, rows: [&[R::Elem]; 3]) -> Vec<R::Elem> {
    (0..4)
        .map(|skip| {
            let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
            let pick = |r: usize| [&rows[r][cols[0]], &rows[r][cols[1]], &rows[r][cols[2]]];
            let d = det3(ring, [pick(0), pick(1), pick(2)]);
            if skip % 2 == 0 {
                d
            } else {
                ring.neg(&d)
            }
        })
        .collect()
}

pub fn dot<R: Domain>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> R::Elem {
    a.iter().zip(b).fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)))
}
