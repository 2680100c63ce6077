//! The flux-overlap difference metric and the 36-pair model
//! tournament built on it.
//!
//! Two reflection models differ *visibly* where one sends flux a
//! viewer can detect and the other does not, or where both do but with
//! different strength. The metric thresholds two flux lattices into
//! active masks and charges each lattice for the flux the other fails
//! to match, normalized by its own active area; the score is the
//! smaller of the two one-sided excesses, so models only count as
//! different when **each** has flux the other cannot account for.

mod metric;
pub mod reference;
mod tournament;

pub use metric::{flux_overlap, scalar_flux_overlap, OverlapResult, DEFAULT_THRESHOLD};
pub use tournament::{
    run_tournament, PairCategory, PairScore, StudyScene, TournamentConfig, TournamentReport,
    BASE_INTENSITY_AT_128, STUDY_LIGHT_POSITIONS,
};
