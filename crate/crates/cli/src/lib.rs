//! Command-line front end for the exact τ-module invariants library:
//! structured-text job specs, deterministic JSON/table/CSV reports, and the
//! Drinfeld compatible-system sweep.

pub mod commands;
pub mod compat;
pub mod jobspec;
pub mod output;
