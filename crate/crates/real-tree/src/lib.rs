//! Real trees coded by nonnegative paths.
//!
//! A nonnegative path `g` on `[0, span]` with `g(0) = g(span) = 0` codes a
//! rooted real tree: the quotient of the interval under the pseudometric
//! `d_g(s, t) = g(s) + g(t) - 2 min g` over `[s∧t, s∨t]`. This crate
//! evaluates that pseudometric on sampled paths, re-roots coding
//! excursions, extracts the finite subtree spanned by finitely many sample
//! times as a [`MarkedTree`], realizes marked trees as explicit distance
//! matrices ([`FiniteRootedMetric`]), and compares rooted metric spaces in
//! the Gromov-Hausdorff sense ([`gh_upper_bound`], [`gh_exact`]).
//!
//! Conventions:
//!
//! * paths are piecewise-linear [`excursion_lab::PathGrid`] values on
//!   uniform grids;
//! * marked trees serialize to JSON with the skeleton as its child-count
//!   string; distance matrices export as CSV;
//! * tie comparisons in subtree extraction use exact float equality, and
//!   the triangle/four-point certificates are arranged so rounding cannot
//!   flip a true comparison.

mod error;
mod finite;
mod gh;
mod marked;
mod metric;

pub use error::TreeMetricError;
pub use finite::{metric_from_marked_tree, FiniteRootedMetric};
pub use gh::{gh_exact, gh_upper_bound, GH_EXACT_MAX_POINTS};
pub use marked::{extract_marked_tree, MarkedTree};
pub use metric::{
    four_point_certificate, path_distance, reroot, reroot_time, triangle_certificate,
};
