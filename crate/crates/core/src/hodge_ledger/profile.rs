use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::diamond::HodgeDiamond;
use super::LedgerError;

pub const SCHEMA_VERSION: u32 = 1;

/// Crystalline torsion `W/p^n` in the listed degrees and none elsewhere,
/// with `n` unknown; when `degenerate_iff_positive`, Hodge-de Rham
/// degenerates exactly when `n > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParametricTorsion {
    pub degrees: Vec<usize>,
    #[serde(default)]
    pub degenerate_iff_positive: bool,
}

/// What is known about one smooth proper threefold over a perfect field of
/// characteristic `prime`, and about its lift when there is one.
///
/// Hodge entries are keyed `"hPQ"` for `dim H^Q(Omega^P)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohomologyProfile {
    pub schema: u32,
    pub name: String,
    pub prime: u64,
    /// Absolute ramification index of the base of the lift.
    #[serde(default)]
    pub ramification: Option<u32>,
    /// Ranks of crystalline cohomology (the Betti numbers of a lift).
    #[serde(default)]
    pub betti: Vec<Option<u32>>,
    /// `dim H^i_et(X, F_p)` of the generic fiber.
    #[serde(default)]
    pub mod_p_betti: Vec<Option<u32>>,
    #[serde(default)]
    pub strict_cy: bool,
    #[serde(default)]
    pub w2_liftable: Option<bool>,
    #[serde(default)]
    pub ordinary: Option<bool>,
    /// Whether Hodge-de Rham degenerates at `E1` on the special fiber.
    #[serde(default)]
    pub hdr_degenerate: Option<bool>,
    #[serde(default)]
    pub special: BTreeMap<String, u32>,
    #[serde(default)]
    pub generic: Option<BTreeMap<String, u32>>,
    #[serde(default)]
    pub crystalline_torsion: Option<ParametricTorsion>,
}

/// Parse `"hPQ"` into `(P, Q)`.
pub fn hodge_key(key: &str) -> Result<(usize, usize), LedgerError> {
    let b = key.as_bytes();
    if b.len() == 3 && b[0] == b'h' && (b'0'..=b'3').contains(&b[1]) && (b'0'..=b'3').contains(&b[2]) {
        Ok(((b[1] - b'0') as usize, (b[2] - b'0') as usize))
    } else {
        Err(LedgerError::Malformed(format!("bad Hodge key {key:?}, expected h00 .. h33")))
    }
}

fn seven(v: &[Option<u32>], what: &str) -> Result<[Option<u32>; 7], LedgerError> {
    match v.len() {
        0 => Ok([None; 7]),
        7 => Ok(std::array::from_fn(|i| v[i])),
        n => Err(LedgerError::Malformed(format!("{what} has {n} entries, expected 7"))),
    }
}

impl CohomologyProfile {
    pub fn from_json(src: &str) -> Result<Self, LedgerError> {
        let p: Self = serde_json::from_str(src).map_err(|e| LedgerError::Malformed(e.to_string()))?;
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), LedgerError> {
        if self.schema != SCHEMA_VERSION {
            return Err(LedgerError::Malformed(format!("schema {} unsupported, expected {SCHEMA_VERSION}", self.schema)));
        }
        if self.prime < 2 || !(2..self.prime).take_while(|d| d * d <= self.prime).all(|d| self.prime % d != 0) {
            return Err(LedgerError::Malformed(format!("{} is not prime", self.prime)));
        }
        if self.ramification == Some(0) {
            return Err(LedgerError::Malformed("ramification index must be positive".into()));
        }
        let betti = self.betti()?;
        let modp = self.mod_p_betti()?;
        for i in 0..7 {
            if let (Some(a), Some(b)) = (betti[i], betti[6 - i]) {
                if a != b {
                    return Err(LedgerError::Malformed(format!("Betti numbers b{i} = {a} and b{} = {b} violate Poincare duality", 6 - i)));
                }
            }
            if let (Some(b), Some(m)) = (betti[i], modp[i]) {
                if m < b {
                    return Err(LedgerError::Malformed(format!("mod-p Betti number {m} in degree {i} is below the rank {b}")));
                }
            }
        }
        for k in self.special.keys() {
            hodge_key(k)?;
        }
        if let Some(g) = &self.generic {
            for k in g.keys() {
                hodge_key(k)?;
            }
        }
        if let Some(t) = &self.crystalline_torsion {
            if t.degrees.is_empty() || t.degrees.iter().any(|&d| d > 6) {
                return Err(LedgerError::Malformed("crystalline torsion degrees must lie in 0..=6".into()));
            }
        }
        Ok(())
    }

    pub fn betti(&self) -> Result<[Option<u32>; 7], LedgerError> {
        seven(&self.betti, "betti")
    }

    pub fn mod_p_betti(&self) -> Result<[Option<u32>; 7], LedgerError> {
        seven(&self.mod_p_betti, "mod_p_betti")
    }

    /// The generic fiber's diamond: given entries, then `h00 = 1`, the strict
    /// Calabi-Yau entries if flagged, Hodge symmetry and Serre duality.
    /// Every entry must end up determined.
    pub fn generic_diamond(&self) -> Result<Option<HodgeDiamond>, LedgerError> {
        let Some(g) = &self.generic else { return Ok(None) };
        let mut h: [[Option<u32>; 4]; 4] = [[None; 4]; 4];
        let set = |h: &mut [[Option<u32>; 4]; 4], p: usize, q: usize, v: u32| -> Result<bool, LedgerError> {
            match h[p][q] {
                Some(old) if old != v => Err(LedgerError::Inconsistent(format!("generic h{p}{q} is both {old} and {v}"))),
                Some(_) => Ok(false),
                None => {
                    h[p][q] = Some(v);
                    Ok(true)
                }
            }
        };
        set(&mut h, 0, 0, 1)?;
        if self.strict_cy {
            set(&mut h, 0, 1, 0)?;
            set(&mut h, 0, 2, 0)?;
            set(&mut h, 0, 3, 1)?;
        }
        for (k, &v) in g {
            let (p, q) = hodge_key(k)?;
            set(&mut h, p, q, v)?;
        }
        loop {
            let mut changed = false;
            for p in 0..4 {
                for q in 0..4 {
                    if let Some(v) = h[p][q] {
                        changed |= set(&mut h, q, p, v)?;
                        changed |= set(&mut h, 3 - p, 3 - q, v)?;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut out = [[0; 4]; 4];
        for p in 0..4 {
            for q in 0..4 {
                out[p][q] = h[p][q].ok_or_else(|| LedgerError::Malformed(format!("generic diamond leaves h{p}{q} undetermined")))?;
            }
        }
        HodgeDiamond::new(out).map(Some)
    }
}
