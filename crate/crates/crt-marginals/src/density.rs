//! Closed-form densities for the subtree of the Brownian continuum tree
//! spanned by `p` sampled leaves, in several normalizations.

use real_tree::MarkedTree;
use tree_codings::{count_binary_skeletons, count_labelled_binary};

use crate::error::CrtError;
use crate::quad::simpson;

/// Exact factorial as a float (inputs stay far below the 2^53 boundary
/// for every supported leaf count).
fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn binary_leaf_count(theta: &MarkedTree) -> Result<usize, CrtError> {
    if !theta.skeleton().is_binary() {
        return Err(CrtError::NonBinarySkeleton);
    }
    Ok(theta.leaves().len())
}

/// First-passage density at level `a > 0` for a standard one-dimensional
/// Brownian motion started at 0:
///
/// ```text
/// q_a(s) = a / sqrt(2 pi s^3) * exp(-a^2 / (2 s)),   s > 0,
/// ```
///
/// and 0 for `s <= 0`. Integrates to 1 over `s > 0`, and the partial
/// integral up to `S` equals `2 (1 - Phi(a / sqrt(S)))`.
pub fn hitting_time_density(a: f64, s: f64) -> f64 {
    assert!(a > 0.0 && a.is_finite(), "need a positive finite level");
    if s <= 0.0 {
        return 0.0;
    }
    a / (2.0 * std::f64::consts::PI * s.powi(3)).sqrt() * (-a * a / (2.0 * s)).exp()
}

/// Density of a marked binary tree with `p` leaves under the law of the
/// subtree spanned by `p` ordered uniform times of a normalized Brownian
/// excursion, with respect to the uniform measure on binary shapes times
/// Lebesgue measure on the `2p - 1` marks:
///
/// ```text
/// p! * 2^(p+1) * L * exp(-2 L^2),   L = total length.
/// ```
pub fn density_normalized(theta: &MarkedTree) -> Result<f64, CrtError> {
    let p = binary_leaf_count(theta)?;
    let l = theta.total_length();
    Ok(factorial(p) * 2f64.powi(p as i32 + 1) * l * (-2.0 * l * l).exp())
}

/// Joint density of the spanned subtree and the excursion duration under
/// the sigma-finite excursion measure: `2^(p-1) * q_{2L}(s)` with respect
/// to shape-uniform-times-Lebesgue on trees and Lebesgue on the duration.
///
/// Integrating out `s` recovers the constant `2^(p-1)`, and conditioning
/// on `s = 1` recovers [`density_normalized`] up to the `p!` ordering
/// factor — see [`ito_ratio_identity_gap`].
pub fn density_ito_joint(theta: &MarkedTree, s: f64) -> Result<f64, CrtError> {
    let p = binary_leaf_count(theta)?;
    let l = theta.total_length();
    if l <= 0.0 {
        return Ok(0.0);
    }
    Ok(2f64.powi(p as i32 - 1) * hitting_time_density(2.0 * l, s))
}

/// Difference between the two sides of the pointwise identity
///
/// ```text
/// density_ito_joint(theta, 1) / (½ (2π)^{-1/2})  ==  density_normalized(theta) / p!
/// ```
///
/// relating the duration-conditioned sigma-finite law at duration 1 to the
/// normalized law (the `p!` converts ordered sample times into unordered
/// ones). Mathematically zero; evaluated for testing.
pub fn ito_ratio_identity_gap(theta: &MarkedTree) -> Result<f64, CrtError> {
    let p = binary_leaf_count(theta)?;
    let unit_duration_mass = 0.5 / (2.0 * std::f64::consts::PI).sqrt();
    let lhs = density_ito_joint(theta, 1.0)? / unit_duration_mass;
    let rhs = density_normalized(theta)? / factorial(p);
    Ok(lhs - rhs)
}

/// Numeric normalization integral of [`density_normalized`] over all
/// binary shapes and all nonnegative marks: the mark integral reduces to a
/// one-dimensional one because the density depends on the marks only
/// through their sum `L`, and the slice volume of
/// `{h in R_+^{2p-1} : sum h = L}` scales as `L^{2p-2} / (2p-2)!`. Equals
/// 1 for every `p >= 1` (the count of binary shapes cancels the mark
/// integral exactly); returned from quadrature for verification.
pub fn normalized_density_integral(p: usize) -> Result<f64, CrtError> {
    let shapes = count_binary_skeletons(p)
        .map_err(|_| CrtError::InvalidLeafCount { got: p, min: 1 })? as f64;
    let constant = factorial(p) * 2f64.powi(p as i32 + 1);
    let slice = 1.0 / factorial(2 * p - 2);
    let mark_integral = simpson(
        |l| l.powi(2 * p as i32 - 1) * (-2.0 * l * l).exp(),
        0.0,
        8.0,
        100_000,
    );
    Ok(shapes * constant * slice * mark_integral)
}

/// Number of labelled binary shapes with `p` leaves:
/// `1 * 3 * ... * (2p - 3)`.
pub fn aldous_count(p: usize) -> Result<u128, CrtError> {
    if p < 2 {
        return Err(CrtError::InvalidLeafCount { got: p, min: 2 });
    }
    count_labelled_binary(p).map_err(|_| CrtError::InvalidLeafCount { got: p, min: 2 })
}

/// Mark density for a fixed labelled binary shape with `p` leaves in the
/// doubled-excursion scaling: `b_p * L * exp(-L^2 / 2)` with `L` the total
/// length, a probability density on `R_+^{2p-1}`.
pub fn aldous_density(p: usize, total_length: f64) -> Result<f64, CrtError> {
    let b_p = aldous_count(p)? as f64;
    if total_length < 0.0 {
        return Ok(0.0);
    }
    Ok(b_p * total_length * (-total_length * total_length / 2.0).exp())
}

/// Numeric normalization integral of [`aldous_density`] over the marks of
/// one labelled shape (same slice-volume reduction as
/// [`normalized_density_integral`]). Equals 1 for every `p >= 2`.
pub fn aldous_normalization_integral(p: usize) -> Result<f64, CrtError> {
    let b_p = aldous_count(p)? as f64;
    let slice = 1.0 / factorial(2 * p - 2);
    let mark_integral = simpson(
        |l| l.powi(2 * p as i32 - 1) * (-l * l / 2.0).exp(),
        0.0,
        14.0,
        100_000,
    );
    Ok(b_p * slice * mark_integral)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tree_codings::OrderedTree;

    fn single_leaf(h: f64) -> MarkedTree {
        MarkedTree::new(OrderedTree::leaf(), vec![h]).unwrap()
    }

    fn cherry(marks: [f64; 3]) -> MarkedTree {
        let skel = OrderedTree::from_counts(vec![2, 0, 0]).unwrap();
        MarkedTree::new(skel, marks.to_vec()).unwrap()
    }

    #[test]
    fn normalized_density_at_a_single_leaf() {
        let d = density_normalized(&single_leaf(0.5)).unwrap();
        assert!((d - 2.0 * (-0.5f64).exp()).abs() < 1e-15);
        assert!((d - 1.2131).abs() < 1e-4);
        assert_eq!(density_normalized(&single_leaf(0.0)).unwrap(), 0.0);
    }

    #[test]
    fn non_binary_skeletons_are_rejected() {
        let chain = OrderedTree::from_counts(vec![1, 0]).unwrap();
        let theta = MarkedTree::new(chain, vec![0.1, 0.2]).unwrap();
        assert_eq!(density_normalized(&theta), Err(CrtError::NonBinarySkeleton));
        assert_eq!(
            density_ito_joint(&theta, 1.0),
            Err(CrtError::NonBinarySkeleton)
        );
    }

    #[test]
    fn joint_density_at_a_single_leaf_and_unit_duration() {
        // Level 2L = 1, duration 1.
        let d = density_ito_joint(&single_leaf(0.5), 1.0).unwrap();
        let expected = (2.0 * std::f64::consts::PI).sqrt().recip() * (-0.5f64).exp();
        assert!((d - expected).abs() < 1e-15);
        // The density vanishes at nonpositive durations.
        assert_eq!(density_ito_joint(&single_leaf(0.5), 0.0).unwrap(), 0.0);
        assert_eq!(density_ito_joint(&single_leaf(0.5), -1.0).unwrap(), 0.0);
    }

    #[test]
    fn hitting_density_partial_integrals_match_the_reflection_formula() {
        // For each level a and horizon S, the mass up to S equals
        // 2 (1 - Phi(a / sqrt(S))).
        for (a, s_max) in [(1.0, 1.0), (1.0, 4.0), (2.5, 3.0)] {
            let quad = simpson(|s| hitting_time_density(a, s), 1e-12, s_max, 200_000);
            let exact = 2.0 * (1.0 - excursion_lab::standard_normal_cdf(a / s_max.sqrt()));
            assert!(
                (quad - exact).abs() < 1e-8,
                "a = {a}, S = {s_max}: {quad} vs {exact}"
            );
        }
    }

    #[test]
    fn ratio_identity_holds_pointwise() {
        for (p, theta) in [
            (1usize, single_leaf(0.37)),
            (1, single_leaf(1.9)),
            (2, cherry([0.2, 0.45, 0.8])),
            (2, cherry([1.1, 0.05, 0.3])),
        ] {
            let gap = ito_ratio_identity_gap(&theta).unwrap();
            let scale = density_normalized(&theta).unwrap() / factorial(p);
            assert!(
                gap.abs() <= 1e-12 * scale.max(1.0),
                "p = {p}: gap {gap}"
            );
        }
    }

    #[test]
    fn normalization_integrals_equal_one_for_small_leaf_counts() {
        for p in 1..=5 {
            let total = normalized_density_integral(p).unwrap();
            assert!(
                (total - 1.0).abs() < 1e-6,
                "normalized, p = {p}: integral {total}"
            );
        }
        for p in 2..=5 {
            let total = aldous_normalization_integral(p).unwrap();
            assert!(
                (total - 1.0).abs() < 1e-6,
                "doubled scaling, p = {p}: integral {total}"
            );
        }
    }

    #[test]
    fn labelled_shape_counts_match_the_double_factorial() {
        assert_eq!(aldous_count(2).unwrap(), 1);
        assert_eq!(aldous_count(3).unwrap(), 3);
        assert_eq!(aldous_count(5).unwrap(), 105);
        assert_eq!(
            aldous_count(1),
            Err(CrtError::InvalidLeafCount { got: 1, min: 2 })
        );
    }

    #[test]
    fn doubling_marks_translates_between_the_two_scalings() {
        // Combinatorial half: b_p * 2^(p-1) = c_p * p!.
        for p in 2..=10usize {
            let b_p = aldous_count(p).unwrap();
            let c_p = count_binary_skeletons(p).unwrap();
            assert_eq!(
                b_p * (1u128 << (p - 1)),
                c_p * (1..=p as u128).product::<u128>(),
                "p = {p}"
            );
        }
        // Analytic half: pushing the per-shape normalized mark density
        // through h -> 2h lands exactly on the doubled-scaling density.
        for p in 2..=6usize {
            let c_p = count_binary_skeletons(p).unwrap() as f64;
            for l in [0.3, 0.9, 1.7, 2.4] {
                let pushed = c_p
                    * factorial(p)
                    * 2f64.powi(p as i32 + 1)
                    * (l / 2.0)
                    * (-2.0 * (l / 2.0) * (l / 2.0)).exp()
                    / 2f64.powi(2 * p as i32 - 1);
                let direct = aldous_density(p, l).unwrap();
                assert!(
                    (pushed - direct).abs() <= 1e-12 * direct.max(1.0),
                    "p = {p}, L = {l}: {pushed} vs {direct}"
                );
            }
        }
    }
}
