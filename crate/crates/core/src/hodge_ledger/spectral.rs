use serde::Serialize;

use super::diamond::HodgeDiamond;
use super::LedgerError;

/// A `d2` edge `H^i(Omega^j) -> H^{i+2}(Omega^{j-1})` on the conjugate
/// page of a threefold, written as `(source, target)` with cells `(i, j)`.
pub type Edge = ((usize, usize), (usize, usize));

/// All six `d2` edges, listed so that edges `2k` and `2k + 1` are Serre dual.
pub const EDGES: [Edge; 6] = [
    ((1, 1), (3, 0)),
    ((0, 3), (2, 2)),
    ((0, 2), (2, 1)),
    ((1, 2), (3, 1)),
    ((0, 1), (2, 0)),
    ((1, 3), (3, 2)),
];

/// Edge index for a source cell, if one leaves it.
pub fn edge_from(source: (usize, usize)) -> Option<usize> {
    EDGES.iter().position(|e| e.0 == source)
}

/// `E2` page: `dims[i][j] = dim H^i(Omega^j)` with rank markings on edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SSGrid {
    pub dims: [[u32; 4]; 4],
    pub ranks: [u32; 6],
}

impl SSGrid {
    pub fn from_diamond(d: &HodgeDiamond) -> Self {
        let mut dims = [[0; 4]; 4];
        for (i, row) in dims.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = d.get(j, i);
            }
        }
        Self { dims, ranks: [0; 6] }
    }

    pub fn mark(&mut self, source: (usize, usize), rank: u32) -> Result<(), LedgerError> {
        let k = edge_from(source).ok_or_else(|| LedgerError::Malformed(format!("no d2 leaves H^{}(Omega^{})", source.0, source.1)))?;
        self.ranks[k] = rank;
        Ok(())
    }
}

/// De Rham dimensions `H^0 .. H^6` from the `E2` page with `d2` only.
pub fn run_conjugate_ss(grid: &SSGrid) -> Result<[u32; 7], LedgerError> {
    let mut e3: [[i64; 4]; 4] = [[0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            e3[i][j] = grid.dims[i][j] as i64;
        }
    }
    for (k, &((si, sj), (ti, tj))) in EDGES.iter().enumerate() {
        let r = grid.ranks[k];
        let bound = grid.dims[si][sj].min(grid.dims[ti][tj]);
        if r > bound {
            return Err(LedgerError::Inconsistent(format!(
                "rank {r} on H^{si}(Omega^{sj}) -> H^{ti}(Omega^{tj}) exceeds {bound}"
            )));
        }
        e3[si][sj] -= r as i64;
        e3[ti][tj] -= r as i64;
    }
    let mut out = [0u32; 7];
    for i in 0..4 {
        for j in 0..4 {
            if e3[i][j] < 0 {
                return Err(LedgerError::Inconsistent(format!("H^{i}(Omega^{j}) is over-killed by differentials")));
            }
            out[i + j] += e3[i][j] as u32;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_are_d2_and_paired_by_duality() {
        for (k, &((si, sj), (ti, tj))) in EDGES.iter().enumerate() {
            assert_eq!((ti, tj + 1), (si + 2, sj));
            if k % 2 == 0 {
                let ((di, dj), _) = EDGES[k + 1];
                // dual of (i, j) -> (i+2, j-1) is (1-i, 4-j) -> (3-i, 3-j)
                assert_eq!((di, dj), (1 - si, 4 - sj));
            }
        }
    }

    #[test]
    fn degenerate_page_sums_diagonals() {
        let d = HodgeDiamond::calabi_yau(0, 0, 1, 101).unwrap();
        let g = SSGrid::from_diamond(&d);
        assert_eq!(run_conjugate_ss(&g).unwrap(), [1, 0, 1, 204, 1, 0, 1]);
    }

    #[test]
    fn two_rank_one_differentials() {
        let d = HodgeDiamond::calabi_yau(0, 0, 39, 1).unwrap();
        let mut g = SSGrid::from_diamond(&d);
        g.mark((1, 1), 1).unwrap();
        g.mark((0, 3), 1).unwrap();
        assert_eq!(run_conjugate_ss(&g).unwrap(), [1, 0, 38, 2, 38, 0, 1]);
        g.mark((0, 2), 1).unwrap();
        assert!(run_conjugate_ss(&g).is_err());
        assert!(g.mark((2, 2), 1).is_err());
    }
}
