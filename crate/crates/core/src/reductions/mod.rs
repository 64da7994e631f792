//! Answer-preserving reductions, grouped by equivalence class.
//!
//! Every reduction that produces a structured instance also emits the
//! matching certificate; the harness re-verifies each one.

pub mod apps;
pub mod circuit;
pub mod horn;
pub mod modulator;
pub mod reach;
