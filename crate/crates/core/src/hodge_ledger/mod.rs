//! Bookkeeping for Hodge, de Rham and crystalline invariants of threefolds
//! in characteristic `p`, and what known comparison theorems force.

mod diamond;
mod engine;
mod profile;
mod spectral;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use diamond::{uct_hodge, HodgeDiamond, TorsionEntry, TorsionReport};
pub use engine::{derive, LedgerReport, TrailEntry, RANK_CAP};
pub use profile::{hodge_key, CohomologyProfile, ParametricTorsion, SCHEMA_VERSION};
pub use spectral::{edge_from, run_conjugate_ss, Edge, SSGrid, EDGES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LedgerError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("[{rule}] refused: {reason}")]
    Refused { rule: &'static str, reason: String },
    #[error("inconsistent: {0}")]
    Inconsistent(String),
}

/// Names of the results each derivation step rests on.
pub mod cite {
    pub const INPUT: &str = "input";
    pub const CONNECTED: &str = "connectedness";
    pub const STRICT_CY: &str = "strict Calabi-Yau";
    pub const CONJUGATE_SS: &str = "conjugate spectral sequence";
    pub const POINCARE: &str = "Poincare duality";
    pub const CARUSO: &str = "Caruso comparison (ie < p-1)";
    pub const UCT_CRYS: &str = "crystalline universal coefficients";
    pub const UCT_HODGE: &str = "Hodge universal coefficients";
    pub const DELIGNE_ILLUSIE: &str = "Deligne-Illusie";
    pub const W2: &str = "W2 obstruction";
    pub const TORSION_DEGENERATION: &str = "torsion degeneration criterion";
    pub const HEIGHT_LIFT: &str = "finite height lifts to W2";
}

/// `dim H^i_dR` of the special fiber from the mod-`p` Betti number of the
/// generic fiber, valid when `i e < p - 1`.
pub fn caruso_dim(profile: &CohomologyProfile, i: usize) -> Result<u32, LedgerError> {
    let refuse = |reason: String| LedgerError::Refused { rule: cite::CARUSO, reason };
    let e = profile.ramification.ok_or_else(|| refuse("ramification index unknown".into()))?;
    if i > 6 {
        return Err(refuse(format!("degree {i} is out of range")));
    }
    if (i as u64) * (e as u64) + 1 >= profile.prime {
        return Err(refuse(format!("i e = {} is not below p - 1 = {}", i as u64 * e as u64, profile.prime - 1)));
    }
    profile.mod_p_betti()?[i].ok_or_else(|| refuse(format!("mod-p Betti number in degree {i} unknown")))
}

/// Markings forced on the conjugate page by a missing `W2` lift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct W2Marking {
    pub edges: Vec<Edge>,
    pub min_rank: u32,
}

/// For a strict Calabi-Yau threefold without a lift to `W2`, the
/// obstruction class makes `H^1(Omega^1) -> H^3(O)` and its Serre dual
/// `H^0(Omega^3) -> H^2(Omega^2)` nonzero.
pub fn w2_rule(profile: &CohomologyProfile) -> Result<W2Marking, LedgerError> {
    let refuse = |reason: &str| LedgerError::Refused { rule: cite::W2, reason: reason.into() };
    match profile.w2_liftable {
        Some(false) => {}
        Some(true) => return Err(refuse("the profile lifts to W2")),
        None => return Err(refuse("W2 liftability unknown")),
    }
    if !profile.strict_cy {
        return Err(refuse("needs a strict Calabi-Yau threefold"));
    }
    Ok(W2Marking { edges: EDGES[..2].to_vec(), min_rank: 1 })
}

/// A strict Calabi-Yau threefold of finite height lifts to `W2`, so a
/// non-liftable one is supersingular. `Ok` means the rule concludes
/// supersingularity.
pub fn supersingularity_rule(profile: &CohomologyProfile) -> Result<(), LedgerError> {
    let refuse = |reason: &str| LedgerError::Refused { rule: cite::HEIGHT_LIFT, reason: reason.into() };
    if !profile.strict_cy {
        return Err(refuse("needs a strict Calabi-Yau threefold"));
    }
    match profile.w2_liftable {
        Some(false) => {}
        Some(true) => return Err(refuse("the profile lifts to W2, so the rule says nothing")),
        None => return Err(refuse("W2 liftability unknown")),
    }
    if profile.ordinary == Some(true) {
        return Err(LedgerError::Inconsistent(format!(
            "[{}] an ordinary strict Calabi-Yau threefold has height 1 and lifts to W2",
            cite::HEIGHT_LIFT
        )));
    }
    Ok(())
}

/// An abelian group of the form `0`, `Z` or `Z/m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Group {
    Zero,
    Integers,
    Cyclic(u64),
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Zero => f.write_str("0"),
            Group::Integers => f.write_str("Z"),
            Group::Cyclic(m) => write!(f, "Z/{m}"),
        }
    }
}

/// `H_n(Z/m, Z)`: `Z` in degree 0, `Z/m` in odd degrees, `0` otherwise.
pub fn cyclic_homology(m: u64, n: usize) -> Result<Group, LedgerError> {
    if m == 0 {
        return Err(LedgerError::Malformed("group order must be positive".into()));
    }
    Ok(match n {
        0 => Group::Integers,
        n if n % 2 == 1 && m > 1 => Group::Cyclic(m),
        _ => Group::Zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cvs5() -> CohomologyProfile {
        CohomologyProfile::from_json(
            r#"{"schema": 1, "name": "x", "prime": 5, "ramification": 2, "strict_cy": true,
                "w2_liftable": false, "mod_p_betti": [1, 0, null, null, null, null, null]}"#,
        )
        .unwrap()
    }

    #[test]
    fn caruso_range() {
        let p = cvs5();
        assert_eq!(caruso_dim(&p, 0).unwrap(), 1);
        assert_eq!(caruso_dim(&p, 1).unwrap(), 0);
        assert!(matches!(caruso_dim(&p, 2), Err(LedgerError::Refused { .. })));
        let mut q = p.clone();
        q.ramification = None;
        assert!(caruso_dim(&q, 0).is_err());
    }

    #[test]
    fn w2_and_supersingularity() {
        let mut p = cvs5();
        assert_eq!(w2_rule(&p).unwrap().edges, vec![((1, 1), (3, 0)), ((0, 3), (2, 2))]);
        assert!(supersingularity_rule(&p).is_ok());
        p.ordinary = Some(true);
        assert!(matches!(supersingularity_rule(&p), Err(LedgerError::Inconsistent(_))));
        p.ordinary = None;
        p.w2_liftable = Some(true);
        assert!(matches!(w2_rule(&p), Err(LedgerError::Refused { .. })));
        assert!(matches!(supersingularity_rule(&p), Err(LedgerError::Refused { .. })));
    }

    #[test]
    fn homology_of_cyclic_groups() {
        let g: Vec<String> = (0..6).map(|n| cyclic_homology(5, n).unwrap().to_string()).collect();
        assert_eq!(g, ["Z", "Z/5", "0", "Z/5", "0", "Z/5"]);
        assert_eq!(cyclic_homology(1, 1).unwrap(), Group::Zero);
        assert!(cyclic_homology(0, 1).is_err());
    }

    fn scenario(name: &str) -> LedgerReport {
        derive(&CohomologyProfile::from_json(crate::fixtures::get(name).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn cvs5_derivation() {
        let r = scenario("cvs5");
        assert_eq!(r.de_rham_all(), Some([1, 0, 38, 2, 38, 0, 1]));
        assert_eq!(r.special_diamond(), Some(HodgeDiamond::calabi_yau(0, 0, 39, 1).unwrap()));
        assert_eq!(r.ranks, [Some(1), Some(0), Some(0)]);
        assert_eq!(r.hodge_torsion.as_ref().unwrap().places(), vec![(2, 1), (2, 2)]);
        assert_eq!(r.alternating_sum, Some(76));
        assert_eq!(r.supersingular, Some(true));
        assert_eq!(r.crystalline_torsion, [Some(0); 8]);
        assert_eq!(r.branches_feasible, 1);
        assert!(r.trail.iter().any(|t| t.rule == cite::CARUSO));
        assert!(r.trail.iter().any(|t| t.rule == cite::W2));
    }

    #[test]
    fn godeaux_derivation() {
        let r = scenario("godeaux");
        assert_eq!(r.special_diamond(), Some(HodgeDiamond::calabi_yau(1, 0, 2, 21).unwrap()));
        assert_eq!(r.ranks, [Some(0); 3]);
        assert_eq!(r.hodge_torsion.as_ref().unwrap().places(), vec![(1, 1), (3, 2)]);
        // the Z/5 in H_1 shows up as torsion in H^2_crys
        assert_eq!(r.crystalline_torsion, [Some(0), Some(0), Some(1), Some(0), Some(0), Some(1), Some(0), Some(0)]);
        assert_eq!(r.supersingular, None);
        assert!(r.trail.iter().any(|t| t.rule == cite::DELIGNE_ILLUSIE));
    }

    #[test]
    fn cvs3_derivation() {
        let r = scenario("cvs3");
        assert_eq!(r.de_rham[3], Some(0));
        assert_eq!(r.betti[3], Some(0));
        assert_eq!(r.crystalline_torsion[3], Some(0));
        assert_eq!(r.supersingular, Some(true));
        // h10 and h20 stay open without Betti data
        assert_eq!(r.special[1][0], None);
        assert_eq!(r.special[2][0], None);
    }

    #[test]
    fn hirokado_derivation() {
        let r = scenario("hirokado");
        assert_eq!(r.torsion_parameter_positive, Some(false));
        assert_eq!(r.ranks[0], Some(1));
        assert!(r.trail.iter().any(|t| t.rule == cite::TORSION_DEGENERATION && t.statement.contains("eliminated")));
    }

    #[test]
    fn inconsistent_inputs_are_reported() {
        let mut p = CohomologyProfile::from_json(crate::fixtures::get("cvs5").unwrap()).unwrap();
        p.special.insert("h21".into(), 0);
        assert!(matches!(derive(&p), Err(LedgerError::Inconsistent(_))));
        let mut q = CohomologyProfile::from_json(crate::fixtures::get("godeaux").unwrap()).unwrap();
        q.special.insert("h11".into(), 3);
        assert!(matches!(derive(&q), Err(LedgerError::Inconsistent(_))));
        let mut h = CohomologyProfile::from_json(crate::fixtures::get("hirokado").unwrap()).unwrap();
        h.hdr_degenerate = Some(true);
        assert!(matches!(derive(&h), Err(LedgerError::Inconsistent(_))));
    }

    #[test]
    fn derivation_is_deterministic() {
        for name in crate::fixtures::SCENARIOS {
            assert_eq!(scenario(name), scenario(name));
        }
    }
}
