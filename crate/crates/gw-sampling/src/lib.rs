//! Branching-process tree samplers and their random-walk couplings.
//!
//! The crate samples rooted ordered trees whose vertices reproduce
//! independently according to a critical or subcritical offspring law:
//! unconditioned trees, trees conditioned on their exact vertex count (via
//! the cycle-lemma rotation of a bridge of the coupled walk), and trees
//! conditioned to reach a given height (via breadth-first growth with early
//! accept/reject). It also exposes the walk coupling itself — the
//! depth-first walk of a forest of independent trees, the height process
//! read off that walk, and ascending-ladder statistics — together with
//! exact generating-function evaluations used as oracles in tests.
//!
//! All samplers draw from a caller-provided random number generator, so
//! replicates can be run concurrently on independently seeded streams.

mod error;
mod law;
mod sample;
mod walk;

pub use error::GwError;
pub use law::OffspringLaw;
pub use sample::{
    sample_conditioned_height, sample_conditioned_height_with_budget, sample_conditioned_size,
    sample_conditioned_size_with_budget, sample_gw, sample_gw_capped, size_is_supported,
    survival_prob, DEFAULT_ATTEMPT_CAP, DEFAULT_VERTEX_CAP,
};
pub use walk::{decode_forest, forest_height_process, ladder_statistics, ForestHeightProcess, WalkPath};
