//! Seeded scaling-limit checks for critical branching forests.
//!
//! Each check draws replicated functionals of sampled forests — vertex
//! heights, contour values, forest counts, conditioned tree sizes and
//! heights, population totals — and compares their rescaled laws against
//! the Brownian limits: half-normal one-dimensional marginals, excursion
//! maxima, reflected-path local times, conditioned excursion durations,
//! occupation-density fields, and the branching diffusion. Closed-form
//! limit CDFs are tested one-sample; everything else is tested two-sample
//! against a simulation of the limiting object itself, built on the same
//! grid conventions as the rest of the workspace.
//!
//! Every check consumes a single seed and derives one independent stream
//! per replicate (replicate `k` of sub-sample `t` uses stream
//! `(t << 48) | k`), so a [`CheckReport`] is a pure function of its name,
//! parameters, and seed. Components either carry a p-value with the
//! pre-registered threshold [`PVALUE_THRESHOLD`], a standardized moment
//! distance with threshold [`ZSCORE_THRESHOLD`], or an exact violation
//! count with threshold zero.

mod checks;
mod error;
mod forest;
mod report;

pub use checks::{
    check_conditioned_height, check_conditioned_size, check_contour_marginal,
    check_feller_limit, check_height_marginal, check_height_universality,
    check_local_time_joint, check_pathwise_identities, check_ray_knight,
    conditioned_duration_laplace, LAPLACE_ARGUMENTS,
};
pub use error::LimitError;
pub use forest::contour_value_at;
pub use report::{
    CheckParameters, CheckReport, Component, StatisticKind, PVALUE_THRESHOLD, ZSCORE_THRESHOLD,
};
