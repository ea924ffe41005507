//! Samplers for the spanned-subtree marginal laws: a direct one from the
//! closed-form density and a path-based one through excursion extraction.

use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma};

use excursion_lab::vervaat_excursion;
use gw_sampling::{sample_conditioned_size, OffspringLaw};
use real_tree::{extract_marked_tree, MarkedTree};
use tree_codings::OrderedTree;

use crate::error::CrtError;

/// Uniformly random binary shape with `p` leaves (all `catalan(p - 1)`
/// shapes equally likely).
///
/// A branching process whose offspring counts are 0 or 2 with equal
/// probability weights every binary tree of a given size identically, so
/// conditioning it on total size `2p - 1` is exactly the uniform law.
pub fn sample_uniform_binary_shape<R: Rng + ?Sized>(
    p: usize,
    rng: &mut R,
) -> Result<OrderedTree, CrtError> {
    if p == 0 {
        return Err(CrtError::InvalidLeafCount { got: 0, min: 1 });
    }
    Ok(
        sample_conditioned_size(&OffspringLaw::Binary, 2 * p - 1, rng)
            .expect("every odd size is in the support of the binary law"),
    )
}

/// Draws a marked tree from the normalized-excursion marginal law with `p`
/// leaves, directly from its density: the skeleton is a uniform binary
/// shape, the squared total length is Gamma(shape `p`, rate 2), and the
/// marks split the total length uniformly over the `(2p - 2)`-simplex.
///
/// The factorization holds because the density depends on the marks only
/// through their sum `L`: conditionally on `L` the marks are uniform on
/// the simplex slice, and the `L`-marginal `L^{2p-1} e^{-2L^2}` transforms
/// under `Y = L^2` into the Gamma(p, 2) density (a change of variables
/// checked against quadrature in the tests).
pub fn sample_marginal_direct<R: Rng + ?Sized>(
    p: usize,
    rng: &mut R,
) -> Result<MarkedTree, CrtError> {
    let skeleton = sample_uniform_binary_shape(p, rng)?;
    let squared: f64 = Gamma::new(p as f64, 0.5)
        .expect("valid Gamma parameters")
        .sample(rng);
    let l = squared.sqrt();
    let weights: Vec<f64> = (0..2 * p - 1).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = weights.iter().sum();
    let marks: Vec<f64> = weights.iter().map(|w| l * w / total).collect();
    Ok(MarkedTree::new(skeleton, marks).expect("nonnegative marks match the skeleton"))
}

/// Draws a marked tree from the same law by its definition: a normalized
/// Brownian excursion on a grid of step `dt`, `p` independent uniform
/// sample times, and the spanned subtree. Converges to the law of
/// [`sample_marginal_direct`] as `dt -> 0`; at coarse `dt` the interval
/// minima are biased upward by the grid, which shortens the extracted
/// tree.
pub fn sample_marginal_via_excursion<R: Rng + ?Sized>(
    p: usize,
    dt: f64,
    rng: &mut R,
) -> Result<MarkedTree, CrtError> {
    if p == 0 {
        return Err(CrtError::InvalidLeafCount { got: 0, min: 1 });
    }
    let excursion = vervaat_excursion(dt, rng);
    let mut times: Vec<f64> = (0..p).map(|_| rng.random::<f64>()).collect();
    times.sort_by(f64::total_cmp);
    Ok(extract_marked_tree(&excursion, &times)
        .expect("sorted uniform times lie within the unit span"))
}
