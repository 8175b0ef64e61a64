use serde::Serialize;

use super::LedgerError;

/// Hodge numbers of a threefold, `h[p][q] = dim H^q(Omega^p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeDiamond {
    h: [[u32; 4]; 4],
}

impl HodgeDiamond {
    /// Checks Serre duality `h[p][q] = h[3-p][3-q]` and `h[0][0] = 1`.
    pub fn new(h: [[u32; 4]; 4]) -> Result<Self, LedgerError> {
        for p in 0..4 {
            for q in 0..4 {
                if h[p][q] != h[3 - p][3 - q] {
                    return Err(LedgerError::Malformed(format!(
                        "Serre duality fails: h{p}{q} = {} but h{}{} = {}",
                        h[p][q],
                        3 - p,
                        3 - q,
                        h[3 - p][3 - q]
                    )));
                }
            }
        }
        if h[0][0] != 1 {
            return Err(LedgerError::Malformed(format!("h00 = {}, expected 1", h[0][0])));
        }
        Ok(Self { h })
    }

    /// A strict Calabi-Yau shape; the remaining entries follow from Serre
    /// duality and `h01 = h02 = 0`, `h03 = 1`.
    pub fn calabi_yau(h10: u32, h20: u32, h11: u32, h21: u32) -> Result<Self, LedgerError> {
        Self::new([[1, 0, 0, 1], [h10, h11, h21, h20], [h20, h21, h11, h10], [1, 0, 0, 1]])
    }

    pub fn get(&self, p: usize, q: usize) -> u32 {
        self.h[p][q]
    }

    pub fn grid(&self) -> &[[u32; 4]; 4] {
        &self.h
    }

    pub fn is_strict_cy(&self) -> bool {
        self.h[0][1] == 0 && self.h[0][2] == 0 && self.h[0][3] == 1
    }

    /// `sum (-1)^{p+q} h[p][q]`; the topological Euler characteristic only
    /// when Hodge-de Rham degenerates and cohomology is torsion-free.
    pub fn euler_char(&self) -> i64 {
        let mut s = 0i64;
        for p in 0..4 {
            for q in 0..4 {
                let sign = if (p + q) % 2 == 0 { 1 } else { -1 };
                s += sign * self.h[p][q] as i64;
            }
        }
        s
    }

    /// Rows of the usual picture, top `h00` to bottom `h33`; row `k` lists
    /// `h[k][0], h[k-1][1], ...`.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..=6)
            .map(|k: usize| (0..4).filter(|&q| q <= k && k - q < 4).map(|q| self.h[k - q][q]).collect())
            .collect()
    }
}

/// Torsion indicator `t` (dimension of the mod-pi fiber of the torsion) of
/// `H^degree(X, Omega^form)` on the integral model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionEntry {
    pub degree: usize,
    pub form: usize,
    pub indicator: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    /// Nonzero indicators only.
    pub entries: Vec<TorsionEntry>,
}

impl TorsionReport {
    pub fn places(&self) -> Vec<(usize, usize)> {
        self.entries.iter().map(|e| (e.degree, e.form)).collect()
    }
}

/// Place torsion in the integral Hodge cohomology from generic and special
/// Hodge numbers. Per form degree `j`, the sequence
/// `0 -> H^i/pi -> H^i(special) -> H^{i+1}[pi] -> 0` gives
/// `special[i] = generic[i] + t_i + t_{i+1}` with `t_0 = t_4 = 0`
/// (`H^0` of a flat sheaf is torsion-free), so the solution is unique when it exists.
pub fn uct_hodge(generic: &HodgeDiamond, special: &HodgeDiamond) -> Result<TorsionReport, LedgerError> {
    let mut entries = Vec::new();
    for j in 0..4 {
        let mut t = 0i64;
        for i in 0..4 {
            let next = special.h[j][i] as i64 - generic.h[j][i] as i64 - t;
            if next < 0 || (i == 3 && next != 0) {
                return Err(LedgerError::Inconsistent(format!(
                    "no torsion placement explains H^{i}(Omega^{j}): generic {} vs special {}",
                    generic.h[j][i], special.h[j][i]
                )));
            }
            if next > 0 {
                entries.push(TorsionEntry { degree: i + 1, form: j, indicator: next as u32 });
            }
            t = next;
        }
    }
    entries.sort_by_key(|e| (e.degree, e.form));
    Ok(TorsionReport { entries })
}
