//! Exact computations around Calabi-Yau threefolds in positive characteristic:
//! formal-group heights, invariant monomials of cyclic actions, plane
//! arrangements and Hodge-de Rham bookkeeping.

pub mod ring_tower;
pub mod multipoly;
pub mod stienstra;
pub mod formal_group;
pub mod invariant_theory;
pub mod tate_oort;
pub mod arrangement;
pub mod hodge_ledger;
pub mod fixtures;
