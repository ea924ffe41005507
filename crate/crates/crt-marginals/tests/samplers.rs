//! Statistical cross-validation of the marginal-law samplers: the direct
//! sampler matches the closed-form length laws, the excursion sampler
//! matches the direct one once the grid is fine, and coarse grids show the
//! documented downward length bias.

use crt_marginals::{sample_marginal_direct, sample_marginal_via_excursion};
use excursion_lab::{chi_square, ks_test, replicate_rng, two_sample_ks_test};

/// CDF of the total length for one leaf: 1 - exp(-2 h^2).
fn length_cdf_p1(h: f64) -> f64 {
    if h <= 0.0 {
        0.0
    } else {
        1.0 - (-2.0 * h * h).exp()
    }
}

/// CDF of the total length for two leaves: the density is
/// 8 L^3 exp(-2 L^2), so the CDF is 1 - (1 + 2 x^2) exp(-2 x^2).
fn length_cdf_p2(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        1.0 - (1.0 + 2.0 * x * x) * (-2.0 * x * x).exp()
    }
}

#[test]
fn direct_sampler_matches_the_closed_form_length_laws() {
    let mut rng = replicate_rng(0xC47_1001, 0);
    let lengths_p1: Vec<f64> = (0..10_000)
        .map(|_| sample_marginal_direct(1, &mut rng).unwrap().total_length())
        .collect();
    let rec = ks_test("p1-direct-length", &lengths_p1, length_cdf_p1, 0xC47_1001).unwrap();
    assert!(rec.pvalue > 0.01, "p = 1 KS p-value {}", rec.pvalue);

    let lengths_p2: Vec<f64> = (0..10_000)
        .map(|_| sample_marginal_direct(2, &mut rng).unwrap().total_length())
        .collect();
    let rec = ks_test("p2-direct-length", &lengths_p2, length_cdf_p2, 0xC47_1001).unwrap();
    assert!(rec.pvalue > 0.01, "p = 2 KS p-value {}", rec.pvalue);
}

#[test]
fn direct_sampler_puts_uniform_mass_on_the_two_three_leaf_shapes() {
    let mut rng = replicate_rng(0xC47_1002, 0);
    let n = 10_000;
    let mut counts = [0.0f64; 2];
    for _ in 0..n {
        let theta = sample_marginal_direct(3, &mut rng).unwrap();
        // The two binary shapes with three leaves, by counts sequence.
        match theta.skeleton().counts() {
            [2, 2, 0, 0, 0] => counts[0] += 1.0,
            [2, 0, 2, 0, 0] => counts[1] += 1.0,
            other => panic!("unexpected shape {other:?}"),
        }
    }
    let expected = [n as f64 / 2.0, n as f64 / 2.0];
    let (stat, pvalue) = chi_square(&counts, &expected).unwrap();
    assert!(
        pvalue > 0.01,
        "shape uniformity: chi-square {stat}, p-value {pvalue}"
    );
}

#[test]
fn excursion_sampler_matches_the_rayleigh_law_for_one_leaf() {
    let mut rng = replicate_rng(0xC47_1003, 0);
    let dt = 1.0 / 8192.0;
    let lengths: Vec<f64> = (0..2_000)
        .map(|_| {
            sample_marginal_via_excursion(1, dt, &mut rng)
                .unwrap()
                .total_length()
        })
        .collect();
    let rec = ks_test("p1-excursion-length", &lengths, length_cdf_p1, 0xC47_1003).unwrap();
    assert!(rec.pvalue > 0.01, "KS p-value {}", rec.pvalue);
}

#[test]
fn direct_and_excursion_samplers_agree_on_fine_grids() {
    let dt = 2f64.powi(-14);
    for (p, seed) in [(2usize, 0xC47_1004u64), (3, 0xC47_100B)] {
        let mut rng = replicate_rng(seed, 0);
        let direct: Vec<f64> = (0..1_200)
            .map(|_| sample_marginal_direct(p, &mut rng).unwrap().total_length())
            .collect();
        let mut shape_counts = [0.0f64; 2];
        let via: Vec<f64> = (0..1_200)
            .map(|_| {
                let theta = sample_marginal_via_excursion(p, dt, &mut rng).unwrap();
                if p == 3 {
                    match theta.skeleton().counts() {
                        [2, 2, 0, 0, 0] => shape_counts[0] += 1.0,
                        [2, 0, 2, 0, 0] => shape_counts[1] += 1.0,
                        other => panic!("unexpected shape {other:?}"),
                    }
                }
                theta.total_length()
            })
            .collect();
        let rec = two_sample_ks_test(&format!("p{p}-length-two-sample"), &direct, &via, seed)
            .unwrap();
        assert!(
            rec.pvalue > 0.01,
            "p = {p}: two-sample KS p-value {}",
            rec.pvalue
        );
        if p == 3 {
            let total: f64 = shape_counts.iter().sum();
            let (stat, pvalue) =
                chi_square(&shape_counts, &[total / 2.0, total / 2.0]).unwrap();
            assert!(
                pvalue > 0.01,
                "p = 3 excursion shapes: chi-square {stat}, p-value {pvalue}"
            );
        }
    }
}

#[test]
fn coarse_grids_shorten_the_extracted_tree() {
    // Interval minima on a coarse grid overshoot the true minima, so the
    // extracted total length L = g(t1) + g(t2) - min is biased downward;
    // halving the grid repeatedly must close most of the gap to the exact
    // mean E[L] = 0.75 sqrt(pi / 2).
    let exact_mean = 0.75 * (std::f64::consts::PI / 2.0).sqrt();
    let n = 3_000;
    let mean_at = |dt: f64, stream: u64| -> f64 {
        let mut rng = replicate_rng(0xC47_1006, stream);
        (0..n)
            .map(|_| {
                sample_marginal_via_excursion(2, dt, &mut rng)
                    .unwrap()
                    .total_length()
            })
            .sum::<f64>()
            / n as f64
    };
    let coarse = mean_at(1.0 / 64.0, 1);
    let fine = mean_at(1.0 / 4096.0, 2);
    // Standard error of each mean is about 0.34 / sqrt(n) ≈ 0.0062; the
    // bias gap between the grids is ≈ 0.064.
    let se = 0.34 / (n as f64).sqrt();
    assert!(
        coarse < fine - 4.0 * se,
        "no detectable coarse-grid bias: coarse {coarse}, fine {fine}"
    );
    assert!(
        (fine - exact_mean).abs() < 3.5 * se + 0.012,
        "fine-grid mean {fine} too far from exact {exact_mean}"
    );
    assert!(coarse < exact_mean, "coarse mean should undershoot");
}
