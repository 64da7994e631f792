//! The five application equivalences: coloring with tree-depth modulators,
//! Max-Cut from weighted Max-SAT, the CSP chain down to coloring with
//! pathwidth modulators, k-neighborhood-cut, and degenerate deletion.

mod coloring;
mod csp_chain;
mod degdel;
mod knc;
mod maxcut;

pub use coloring::{choose_gamma_rho, qcoloring_to_sat_td, ColoringSat, GammaRhoDirection};
pub use csp_chain::{pwmod_sat_to_qcoloring, SatColoring};
pub use degdel::degdel_to_circuitsat;
pub use knc::{annnonreach_to_knc, dominating_to_knc, knc_to_annnonreach, KncInstance, KncNonReach};
pub use maxcut::{maxcut_to_maxsat, maxsat_to_maxcut, unweight_graph, MaxcutMaxsat, MaxsatMaxcut};
