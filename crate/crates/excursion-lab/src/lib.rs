//! Continuous-path machinery on uniform grids: Brownian motion, reflected
//! motion with exact local time, normalized and height-conditioned
//! excursions, the Feller branching diffusion, and a seeded statistical test
//! kit shared by the simulation crates.
//!
//! # Conventions
//!
//! - Paths live on uniform grids ([`PathGrid`]) and are interpreted as
//!   piecewise linear between grid points; window minima ([`PathGrid::min_on`])
//!   interpolate the boundary values.
//! - Every sampler draws from an explicit random stream, so experiments are
//!   reproducible from a seed; [`replicate_rng`] hands out independent
//!   streams for concurrent replicates.
//! - Paths export as two-column CSV (`time,value`); test outcomes serialize
//!   as JSON records via [`TestRecord`].

mod error;
mod grid;
mod sample;
mod stats;

pub use error::ExcursionError;
pub use grid::{PathGrid, ReflectedPathWithLocalTime};
pub use sample::{
    excursion_height_gt, excursion_height_gt_capped, feller_diffusion, height_excursion_mass,
    local_time_via_counts, reflected_bm_with_local_time, replicate_rng, sample_bm,
    vervaat_excursion, DEFAULT_STEP_BUDGET,
};
pub use stats::{
    chi_square, chi_square_test, ks_pvalue, ks_statistic, ks_test, standard_normal_cdf,
    two_sample_ks, two_sample_ks_test, TestRecord,
};
