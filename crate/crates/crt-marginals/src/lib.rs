//! Marginal laws of the Brownian continuum random tree.
//!
//! The subtree of an excursion-coded tree spanned by `p` sampled leaves is
//! a marked binary tree, and its law has closed-form densities in several
//! normalizations: under the sigma-finite excursion measure (alone or
//! jointly with the duration), under the normalized excursion, and in the
//! doubled-excursion scaling on labelled shapes. This crate evaluates
//! those densities, verifies their normalizations by quadrature, and
//! samples the law both directly (shape uniform, squared length Gamma,
//! marks uniform on a simplex) and through excursion extraction, so the
//! two routes can be cross-validated statistically.

mod density;
mod error;
mod law;
mod quad;
mod sample;

pub use density::{
    aldous_count, aldous_density, aldous_normalization_integral, density_ito_joint,
    density_normalized, hitting_time_density, ito_ratio_identity_gap,
    normalized_density_integral,
};
pub use error::CrtError;
pub use law::{MarginalLaw, Normalization};
pub use sample::{
    sample_marginal_direct, sample_marginal_via_excursion, sample_uniform_binary_shape,
};
