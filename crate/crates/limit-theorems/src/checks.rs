//! Seeded scaling-limit checks: each one samples a branching-forest
//! functional, compares it against its Brownian limit law (by closed-form
//! CDF where one exists, by a two-sample test against a simulated Brownian
//! construction otherwise), and packs the decisions into a [`CheckReport`].

use excursion_lab::{
    excursion_height_gt_capped, feller_diffusion, ks_test, reflected_bm_with_local_time,
    replicate_rng, standard_normal_cdf, two_sample_ks_test, vervaat_excursion, ExcursionError,
};
use gw_sampling::{
    decode_forest, forest_height_process, sample_conditioned_size, size_is_supported,
    OffspringLaw,
};
use rand::Rng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::LimitError;
use crate::forest::{
    conditioned_height_outcome, contour_at, height_at_vertex, population_terminal, tree_index_at,
    GrowthOutcome,
};
use crate::report::{CheckParameters, CheckReport, Component, StatisticKind, ZSCORE_THRESHOLD};

/// Laplace arguments probed by [`check_conditioned_height`].
pub const LAPLACE_ARGUMENTS: [f64; 3] = [0.5, 1.0, 2.0];

/// Grid step of the reflected-path simulation in [`check_local_time_joint`].
const LOCAL_TIME_DT: f64 = 1e-4;

/// Grid step of the normalized-excursion simulation in
/// [`check_conditioned_size`]; a dyadic step divides the unit duration
/// exactly.
const VERVAAT_DT: f64 = 1.0 / 4096.0;

/// Grid step of the tall-excursion simulation in
/// [`check_conditioned_height`].
const TALL_EXCURSION_DT: f64 = 1e-3;

/// Scaled-duration level past which both sides of the conditioned-height
/// comparison are censored: trees past `CENSOR_DURATION·m²` vertices and
/// excursions past duration `CENSOR_DURATION`. The censoring matches on
/// both sides, so the comparison stays consistent, and the Laplace scores
/// it contributes are below `exp(-50)`.
const CENSOR_DURATION: f64 = 100.0;

/// Time allowed for the tall-excursion sampler to reach its first crossing
/// (its first passage is exponentially unlikely to take longer), on top of
/// the censor duration.
const WARMUP_ALLOWANCE: f64 = 10.0;

/// Grid step of the reflected-path simulation in [`check_ray_knight`].
const RAY_KNIGHT_DT: f64 = 1e-4;

/// Expected overshoot of a Gaussian-increment walk's running minimum past a
/// barrier, in units of `√dt`: the barrier continuity correction constant
/// `-ζ(1/2)/√(2π)`. Stopping a walk this far short of a barrier centers
/// the continuous-time crossing level on the intended one, and adding this
/// much to a grid-sampled running extremum recovers the continuous-path
/// extremum in expectation.
const MIN_OVERSHOOT: f64 = 0.582_597_157_939_010_7;

/// Midpoint continuity correction applied to integer-valued statistics
/// before they are compared against a continuous reference law: an integer
/// count `k` stands for the cell `(k - 1/2, k + 1/2]` of its lattice, so
/// its representative point is `k + 1/2` when the reference CDF is
/// evaluated from the left. Statistics whose support edge is pinned to the
/// conditioning boundary on both sides of a comparison (the
/// height-conditioned comparison, where both sides start exactly at 1)
/// are left uncorrected so the edges stay aligned.
const LATTICE_MIDPOINT: f64 = 0.5;

/// Local-time level at which the reflected path is stopped in
/// [`check_ray_knight`]. The coupling's local time is the negated running
/// minimum of the underlying unreflected path; the occupation-density field
/// of the stopped reflected path collects the underlying levels `a` and
/// `-a`, two independent squared-Bessel fields, so it starts from twice
/// this level.
const RAY_KNIGHT_LEVEL: f64 = 0.5;

/// Starting point of the matching branching diffusion: the value of the
/// occupation-density field at level zero.
const RAY_KNIGHT_FIELD_START: f64 = 2.0 * RAY_KNIGHT_LEVEL;

/// Time cap on the reflected-path simulation; the stopping time has
/// infinite mean, and truncation beyond this horizon moves the occupation
/// means by under one percent of their standard-error bands.
const RAY_KNIGHT_TMAX: f64 = 5000.0;

/// The two spatial levels whose occupations [`check_ray_knight`] compares.
const RAY_KNIGHT_LEVELS: [f64; 2] = [0.5, 1.0];

/// Grid step of the branching-diffusion simulations.
const FELLER_DT: f64 = 5e-4;

/// Derives the per-replicate stream id for sub-sample `tag`.
fn stream(tag: u64, k: usize) -> u64 {
    debug_assert!(tag < 1 << 16);
    (tag << 48) | k as u64
}

/// Runs `f` once per replicate on its own derived stream, in parallel.
fn par_samples<T, F>(seed: u64, tag: u64, replicates: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha12Rng) -> T + Sync,
{
    par_samples_indexed(seed, tag, replicates, |_, rng| f(rng))
}

/// Runs `f` once per replicate on its own derived stream, passing the
/// replicate index, in parallel.
fn par_samples_indexed<T, F>(seed: u64, tag: u64, replicates: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, &mut ChaCha12Rng) -> T + Sync,
{
    (0..replicates)
        .into_par_iter()
        .map(|k| {
            let mut rng = replicate_rng(seed, stream(tag, k));
            f(k, &mut rng)
        })
        .collect()
}

/// Sample mean and its standard error.
fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    assert!(!xs.is_empty(), "mean of an empty sample");
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() == 1 {
        return (mean, 0.0);
    }
    let ss = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>();
    let var = ss / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Unbiased sample variance and the standard error of that estimate
/// (`√((m₄ − s⁴)/n)`, with `m₄` the central fourth moment).
fn variance_and_se(xs: &[f64]) -> (f64, f64) {
    assert!(xs.len() >= 2, "variance of a degenerate sample");
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let mut m2 = 0.0;
    let mut m4 = 0.0;
    for x in xs {
        let d = x - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    let var = m2 / (n - 1.0);
    m4 /= n;
    let se = ((m4 - var * var).max(0.0) / n).sqrt();
    (var, se)
}

/// Standardized distance between two estimates with independent errors.
fn zscore(a: f64, se_a: f64, b: f64, se_b: f64) -> f64 {
    let diff = (a - b).abs();
    if diff == 0.0 {
        return 0.0;
    }
    diff / (se_a * se_a + se_b * se_b).sqrt().max(f64::MIN_POSITIVE)
}

/// The limit CDF of scaled heights: the law of `(2/σ)·|N(0,1)|`.
fn half_normal_cdf(scale: f64) -> impl Fn(f64) -> f64 {
    move |x: f64| {
        if x <= 0.0 {
            0.0
        } else {
            2.0 * standard_normal_cdf(x * scale) - 1.0
        }
    }
}

/// Rejects laws the forest couplings do not cover.
fn require_critical(law: &OffspringLaw) -> Result<(), LimitError> {
    if law.is_critical() {
        Ok(())
    } else {
        Err(LimitError::bad(format!(
            "the offspring law {law} is not critical"
        )))
    }
}

/// Laplace transform `E[exp(-λ·ζ)]` of the duration `ζ` of an Itô excursion
/// conditioned to exceed height 1.
///
/// Closed form `√(2λ)·e^{-√(2λ)}/sinh(√(2λ))`: the excursion measure gives
/// duration density `n(ζ ∈ dt, max > 1)` whose normalized transform
/// telescopes into this ratio; it decreases from 1 at `λ = 0` and decays
/// like `2√(2λ)·e^{-2√(2λ)}`.
pub fn conditioned_duration_laplace(lambda: f64) -> f64 {
    assert!(
        lambda >= 0.0 && lambda.is_finite(),
        "the Laplace argument must be a nonnegative real"
    );
    if lambda == 0.0 {
        return 1.0;
    }
    let s = (2.0 * lambda).sqrt();
    s * (-s).exp() / s.sinh()
}

/// Checks that the height of the `p`-th explored vertex, scaled by `√p`,
/// follows the half-normal limit `(2/σ)·|N(0,1)|`. The integer height gets
/// the [`LATTICE_MIDPOINT`] treatment before scaling.
///
/// # Errors
///
/// [`LimitError::BadParameters`] unless the law is critical and there is at
/// least one replicate.
pub fn check_height_marginal(
    law: &OffspringLaw,
    p: usize,
    replicates: usize,
    seed: u64,
) -> Result<CheckReport, LimitError> {
    require_critical(law)?;
    require_replicates(replicates)?;
    let parameters = CheckParameters::new(seed, replicates)
        .with_law(law)
        .with_size(p);
    if p == 0 {
        let worst = par_samples(seed, 1, replicates.min(128), |rng| {
            height_at_vertex(law, 0, rng) as f64
        })
        .into_iter()
        .fold(0.0f64, f64::max);
        let component = Component::from_error("root height", worst, 0.0);
        return Ok(CheckReport::new("height-marginal", parameters, vec![component]));
    }
    let scale = (p as f64).sqrt();
    let sample = par_samples(seed, 1, replicates, |rng| {
        (height_at_vertex(law, p, rng) as f64 + LATTICE_MIDPOINT) / scale
    });
    let record = ks_test(
        "height-marginal",
        &sample,
        half_normal_cdf(law.sigma2().sqrt() / 2.0),
        seed,
    )?;
    let component = Component::from_pvalue(
        "scaled height vs half-normal",
        StatisticKind::Ks,
        record.pvalue,
    );
    Ok(CheckReport::new("height-marginal", parameters, vec![component]))
}

/// Checks that the contour value at contour time `2p`, scaled by `√p`,
/// follows the same half-normal limit `(2/σ)·|N(0,1)|` as the height at
/// vertex `p` (the contour clock runs at twice the vertex clock).
///
/// The contour moves by unit steps inside a tree and every tree occupies an
/// even stretch of the clock, so contour values at even times sit on the
/// even sublattice and values at odd times on the odd one. Replicates
/// alternate between times `2p` and `2p + 1` to cover both sublattices,
/// and the integer value gets the [`LATTICE_MIDPOINT`] treatment.
///
/// # Errors
///
/// [`LimitError::BadParameters`] unless the law is critical and there is at
/// least one replicate.
pub fn check_contour_marginal(
    law: &OffspringLaw,
    p: usize,
    replicates: usize,
    seed: u64,
) -> Result<CheckReport, LimitError> {
    require_critical(law)?;
    require_replicates(replicates)?;
    let parameters = CheckParameters::new(seed, replicates)
        .with_law(law)
        .with_size(p);
    if p == 0 {
        let worst = par_samples(seed, 2, replicates.min(128), |rng| {
            contour_at(law, 0, rng) as f64
        })
        .into_iter()
        .fold(0.0f64, f64::max);
        let component = Component::from_error("contour start", worst, 0.0);
        return Ok(CheckReport::new("contour-marginal", parameters, vec![component]));
    }
    let scale = (p as f64).sqrt();
    let sample = par_samples_indexed(seed, 2, replicates, |k, rng| {
        (contour_at(law, 2 * p + (k & 1), rng) as f64 + LATTICE_MIDPOINT) / scale
    });
    let record = ks_test(
        "contour-marginal",
        &sample,
        half_normal_cdf(law.sigma2().sqrt() / 2.0),
        seed,
    )?;
    let component = Component::from_pvalue(
        "scaled contour vs half-normal",
        StatisticKind::Ks,
        record.pvalue,
    );
    Ok(CheckReport::new("contour-marginal", parameters, vec![component]))
}

/// Checks the forest count `Λ_p` of the first `p` vertices three ways: its
/// two exact combinatorial identities (walk minimum and decoded tree
/// boundaries), its closed-form limit `σ·|N(0,1)|` after `√p` scaling, and
/// a two-sample comparison against the local time at zero of a reflected
/// Brownian path at time 1.
///
/// # Errors
///
/// [`LimitError::BadParameters`] unless the law is critical, `p ≥ 1`, and
/// there is at least one replicate.
pub fn check_local_time_joint(
    law: &OffspringLaw,
    p: usize,
    replicates: usize,
    seed: u64,
) -> Result<CheckReport, LimitError> {
    require_critical(law)?;
    require_replicates(replicates)?;
    if p == 0 {
        return Err(LimitError::bad("the forest count needs at least one vertex"));
    }
    let parameters = CheckParameters::new(seed, replicates)
        .with_law(law)
        .with_size(p)
        .with_grid(LOCAL_TIME_DT);
    let sigma = law.sigma2().sqrt();
    // Every ~20th replicate also decodes the forest and re-derives
    // the count from the tree boundaries.
    let draws = par_samples(seed, 3, replicates, |rng| {
        let deep = rng.random_range(0..20u8) == 0;
        let draw = tree_index_at(law, p, deep, rng);
        let ok = draw.walk_identity && draw.boundary_identity;
        (draw.index as f64, ok)
    });
    let violations = draws.iter().filter(|(_, ok)| !ok).count();
    let identities = Component::from_error("count identities", violations as f64, 0.0);
    if p == 1 {
        let off = draws
            .iter()
            .map(|(v, _)| (v - 1.0).abs())
            .fold(0.0f64, f64::max);
        let first = Component::from_error("first vertex count", off, 0.0);
        return Ok(CheckReport::new(
            "local-time",
            parameters,
            vec![identities, first],
        ));
    }
    let scale = (p as f64).sqrt();
    let sample: Vec<f64> = draws.iter().map(|(v, _)| v / scale).collect();
    let record = ks_test(
        "local-time",
        &sample,
        half_normal_cdf(1.0 / sigma),
        seed,
    )?;
    let marginal = Component::from_pvalue(
        "scaled count vs half-normal",
        StatisticKind::Ks,
        record.pvalue,
    );
    // The coupled local time is the negated running minimum of the
    // underlying walk; on a grid it falls short of the continuous-path
    // minimum by [`MIN_OVERSHOOT`]·√dt in expectation, which the sample
    // adds back.
    let grid_shortfall = MIN_OVERSHOOT * LOCAL_TIME_DT.sqrt();
    let brownian = par_samples(seed, 4, replicates, |rng| {
        let sim = reflected_bm_with_local_time(LOCAL_TIME_DT, 1.0, rng);
        let ltime = sim.ltime.last().copied().expect("the grid is nonempty");
        sigma * (ltime + grid_shortfall)
    });
    let two = two_sample_ks_test("local-time", &sample, &brownian, seed)?;
    let coupled = Component::from_pvalue(
        "scaled count vs reflected-path local time",
        StatisticKind::TwoSampleKs,
        two.pvalue,
    );
    Ok(CheckReport::new(
        "local-time",
        parameters,
        vec![identities, marginal, coupled],
    ))
}

/// Checks that the height of a tree conditioned to have exactly `n`
/// vertices, scaled by `√n`, matches `(2/σ)·max e` for a normalized
/// Brownian excursion `e`, by a two-sample test. The integer height gets
/// the [`LATTICE_MIDPOINT`] treatment before scaling.
///
/// # Errors
///
/// [`LimitError::BadParameters`] unless the law is critical, `n` is in the
/// law's size support, and there is at least one replicate.
pub fn check_conditioned_size(
    law: &OffspringLaw,
    n: usize,
    replicates: usize,
    seed: u64,
) -> Result<CheckReport, LimitError> {
    require_critical(law)?;
    require_replicates(replicates)?;
    if !size_is_supported(law, n) {
        return Err(LimitError::bad(format!(
            "size {n} has zero probability under the law {law}"
        )));
    }
    let parameters = CheckParameters::new(seed, replicates)
        .with_law(law)
        .with_size(n)
        .with_grid(VERVAAT_DT);
    if n == 1 {
        let worst = par_samples(seed, 5, replicates.min(128), |rng| {
            let tree = sample_conditioned_size(law, 1, rng).expect("size 1 is supported");
            *tree.depths().iter().max().expect("nonempty") as f64
        })
        .into_iter()
        .fold(0.0f64, f64::max);
        let component = Component::from_error("single-vertex height", worst, 0.0);
        return Ok(CheckReport::new("conditioned-size", parameters, vec![component]));
    }
    let scale = (n as f64).sqrt();
    let discrete = par_samples(seed, 5, replicates, |rng| {
        let tree = sample_conditioned_size(law, n, rng)
            .expect("the rejection budget covers the checked sizes");
        let height = *tree.depths().iter().max().expect("nonempty") as f64;
        (height + LATTICE_MIDPOINT) / scale
    });
    let factor = 2.0 / law.sigma2().sqrt();
    let brownian = par_samples(seed, 6, replicates, |rng| {
        factor * vervaat_excursion(VERVAAT_DT, rng).max_value()
    });
    let two = two_sample_ks_test("conditioned-size", &discrete, &brownian, seed)?;
    let component = Component::from_pvalue(
        "scaled height vs scaled excursion maximum",
        StatisticKind::TwoSampleKs,
        two.pvalue,
    );
    Ok(CheckReport::new("conditioned-size", parameters, vec![component]))
}

/// Checks a tree conditioned to reach height `m = round(x·√p)` two ways:
/// its vertex count over `m²` against the closed-form Laplace transform of
/// the conditioned excursion duration, and its height over `m` against the
/// maximum of an excursion conditioned past `σ/2`, censored identically on
/// both sides at scaled duration [`CENSOR_DURATION`].
///
/// Both height statistics start exactly at 1 — the tree side because the
/// conditioning keeps `height ≥ m`, the excursion side because the accepted
/// maximum exceeds `σ/2` — so they are compared raw; a lattice midpoint
/// shift would misalign the shared support edge.
///
/// # Errors
///
/// [`LimitError::BadParameters`] unless the law is critical, the rounded
/// threshold is at least 1, and there is at least one replicate.
pub fn check_conditioned_height(
    law: &OffspringLaw,
    x: f64,
    p: usize,
    replicates: usize,
    seed: u64,
) -> Result<CheckReport, LimitError> {
    require_critical(law)?;
    require_replicates(replicates)?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(LimitError::bad("the height anchor must be positive"));
    }
    let m = (x * (p as f64).sqrt()).round() as u64;
    if m < 1 {
        return Err(LimitError::bad(format!(
            "the height threshold rounds to zero at anchor {x} and size {p}"
        )));
    }
    let m2 = (m * m) as f64;
    let vertex_cap = (CENSOR_DURATION * m2) as usize;
    let parameters = CheckParameters::new(seed, replicates)
        .with_law(law)
        .with_size(m as usize)
        .with_grid(TALL_EXCURSION_DT);
    let sigma2 = law.sigma2();
    let sigma = sigma2.sqrt();

    let outcomes: Vec<Result<(f64, Option<f64>), LimitError>> =
        par_samples(seed, 7, replicates, |rng| {
            match conditioned_height_outcome(law, m, vertex_cap, rng)? {
                GrowthOutcome::Accepted { vertices, height } => {
                    Ok((vertices as f64 / m2, Some(height as f64 / m as f64)))
                }
                GrowthOutcome::CapHit => Ok((CENSOR_DURATION, None)),
            }
        });
    let mut zeta = Vec::with_capacity(replicates);
    let mut heights = Vec::new();
    for outcome in outcomes {
        let (z, h) = outcome?;
        zeta.push(z);
        if let Some(h) = h {
            heights.push(h);
        }
    }

    let mut components = Vec::new();
    for lambda in LAPLACE_ARGUMENTS {
        let scores: Vec<f64> = zeta.iter().map(|z| (-lambda * z).exp()).collect();
        let (mean, se) = mean_and_se(&scores);
        let target = conditioned_duration_laplace(lambda * sigma2 / 4.0);
        components.push(Component::from_error(
            format!("duration Laplace transform at {lambda}"),
            zscore(mean, se, target, 0.0),
            ZSCORE_THRESHOLD,
        ));
    }

    let budget = ((CENSOR_DURATION + WARMUP_ALLOWANCE) / TALL_EXCURSION_DT) as usize;
    let brownian: Vec<f64> = par_samples(seed, 8, replicates, |rng| {
        match excursion_height_gt_capped(sigma / 2.0, TALL_EXCURSION_DT, budget, rng) {
            Ok(path) if path.duration() <= CENSOR_DURATION => {
                Some(path.max_value() * 2.0 / sigma)
            }
            Ok(_) => None,
            Err(ExcursionError::BudgetExceeded { .. }) => None,
            Err(e) => panic!("the tall-excursion sampler failed: {e}"),
        }
    })
    .into_iter()
    .flatten()
    .collect();
    let two = two_sample_ks_test("conditioned-height", &heights, &brownian, seed)?;
    components.push(Component::from_pvalue(
        "scaled height vs conditioned excursion maximum",
        StatisticKind::TwoSampleKs,
        two.pvalue,
    ));
    Ok(CheckReport::new("conditioned-height", parameters, components))
}

/// Occupation times of the two spatial bands `[0, a₀]` for one reflected
/// path run until its local time at zero reaches [`RAY_KNIGHT_LEVEL`]
/// (truncated at [`RAY_KNIGHT_TMAX`]).
fn reflected_occupations<R: Rng + ?Sized>(rng: &mut R) -> [f64; 2] {
    let dt = RAY_KNIGHT_DT;
    let sd = dt.sqrt();
    // The grid walk's minimum overshoots any barrier by `MIN_OVERSHOOT·√dt`
    // on average, so the barrier is pulled in by that much to center the
    // continuous-time local time on the intended level.
    let stop = RAY_KNIGHT_LEVEL - MIN_OVERSHOOT * sd;
    let mut b = 0.0f64;
    let mut min = 0.0f64;
    let mut occ = [0.0f64; 2];
    let max_steps = (RAY_KNIGHT_TMAX / dt) as usize;
    for _ in 0..max_steps {
        let z: f64 = rng.sample(StandardNormal);
        b += sd * z;
        if b < min {
            min = b;
            if -min >= stop {
                break;
            }
        }
        let r = b - min;
        if r <= RAY_KNIGHT_LEVELS[0] {
            occ[0] += dt;
        }
        if r <= RAY_KNIGHT_LEVELS[1] {
            occ[1] += dt;
        }
    }
    occ
}

/// Checks the occupation identity between the two descriptions of the
/// local-time field: a reflected Brownian path stopped when its local time
/// at zero reaches [`RAY_KNIGHT_LEVEL`] occupies `[0, a₀]` for exactly as
/// long (in law) as `∫₀^{a₀} X_a da`, where `X` is the branching diffusion
/// `dX = 2√X dB` started from [`RAY_KNIGHT_FIELD_START`] — the
/// occupation-density field read upward from zero. Both descriptions make
/// the level-`a₀` occupation a mean-`a₀` martingale evaluation, which is
/// also checked within its error band.
///
/// # Errors
///
/// [`LimitError::BadParameters`] unless there are at least two replicates
/// (the variances need that many).
pub fn check_ray_knight(replicates: usize, seed: u64) -> Result<CheckReport, LimitError> {
    if replicates < 2 {
        return Err(LimitError::bad("variance comparison needs two replicates"));
    }
    let parameters = CheckParameters::new(seed, replicates).with_grid(RAY_KNIGHT_DT);
    let reflected = par_samples(seed, 9, replicates, reflected_occupations::<ChaCha12Rng>);
    let steps = (RAY_KNIGHT_LEVELS[1] / FELLER_DT).round() as usize;
    let diffused = par_samples(seed, 10, replicates, |rng| {
        let x = feller_diffusion(
            2.0,
            RAY_KNIGHT_FIELD_START,
            FELLER_DT,
            RAY_KNIGHT_LEVELS[1],
            rng,
        );
        let v = x.values();
        let mut occ = [0.0f64; 2];
        let mut acc = 0.0;
        for k in 0..steps {
            acc += 0.5 * (v[k] + v[k + 1]) * FELLER_DT;
            let a = (k + 1) as f64 * FELLER_DT;
            if (a - RAY_KNIGHT_LEVELS[0]).abs() < 0.5 * FELLER_DT {
                occ[0] = acc;
            }
        }
        occ[1] = acc;
        occ
    });
    let mut components = Vec::new();
    for (i, a0) in RAY_KNIGHT_LEVELS.into_iter().enumerate() {
        let occ_r: Vec<f64> = reflected.iter().map(|o| o[i]).collect();
        let occ_f: Vec<f64> = diffused.iter().map(|o| o[i]).collect();
        let (mean_r, se_mr) = mean_and_se(&occ_r);
        let (mean_f, se_mf) = mean_and_se(&occ_f);
        let (var_r, se_vr) = variance_and_se(&occ_r);
        let (var_f, se_vf) = variance_and_se(&occ_f);
        components.push(Component::from_error(
            format!("reflected occupation mean below {a0}"),
            zscore(mean_r, se_mr, a0, 0.0),
            ZSCORE_THRESHOLD,
        ));
        components.push(Component::from_error(
            format!("diffusion occupation mean below {a0}"),
            zscore(mean_f, se_mf, a0, 0.0),
            ZSCORE_THRESHOLD,
        ));
        components.push(Component::from_error(
            format!("occupation mean cross-match below {a0}"),
            zscore(mean_r, se_mr, mean_f, se_mf),
            ZSCORE_THRESHOLD,
        ));
        components.push(Component::from_error(
            format!("occupation variance cross-match below {a0}"),
            zscore(var_r, se_vr, var_f, se_vf),
            ZSCORE_THRESHOLD,
        ));
    }
    Ok(CheckReport::new("ray-knight", parameters, components))
}

/// Checks the branching-diffusion limit of rescaled population sizes: with
/// `p` ancestors run for `p` generations, `Z_p/p` has exact martingale mean
/// 1 and exact second moment `1 + σ²`, and converges in law to the time-1
/// value of `dX = σ√X dB` from 1, which is tested two-sample.
///
/// # Errors
///
/// [`LimitError::BadParameters`] unless the law is critical, `p ≥ 1`, and
/// there is at least one replicate.
pub fn check_feller_limit(
    law: &OffspringLaw,
    p: usize,
    replicates: usize,
    seed: u64,
) -> Result<CheckReport, LimitError> {
    require_critical(law)?;
    require_replicates(replicates)?;
    if p == 0 {
        return Err(LimitError::bad("the population needs at least one ancestor"));
    }
    let parameters = CheckParameters::new(seed, replicates)
        .with_law(law)
        .with_size(p)
        .with_grid(FELLER_DT);
    let sigma2 = law.sigma2();
    let scaled: Vec<f64> = par_samples(seed, 11, replicates, |rng| {
        population_terminal(law, p, p, rng) as f64 / p as f64
    });
    let (mean, se_m) = mean_and_se(&scaled);
    let squares: Vec<f64> = scaled.iter().map(|w| w * w).collect();
    let (second, se_s) = mean_and_se(&squares);
    let diffused = par_samples(seed, 12, replicates, |rng| {
        let path = feller_diffusion(sigma2.sqrt(), 1.0, FELLER_DT, 1.0, rng);
        *path.values().last().expect("the grid is nonempty")
    });
    let two = two_sample_ks_test("feller-limit", &scaled, &diffused, seed)?;
    let components = vec![
        Component::from_error(
            "population martingale mean",
            zscore(mean, se_m, 1.0, 0.0),
            ZSCORE_THRESHOLD,
        ),
        Component::from_error(
            "population second moment",
            zscore(second, se_s, 1.0 + sigma2, 0.0),
            ZSCORE_THRESHOLD,
        ),
        Component::from_pvalue(
            "scaled population vs diffusion",
            StatisticKind::TwoSampleKs,
            two.pvalue,
        ),
    ];
    Ok(CheckReport::new("feller-limit", parameters, components))
}

/// Checks that two critical laws land on the same height limit: after
/// multiplying by `σ/2`, the scaled heights of the `p`-th vertex under both
/// laws are compared two-sample.
///
/// # Errors
///
/// [`LimitError::BadParameters`] unless both laws are critical, `p ≥ 1`,
/// and there is at least one replicate.
pub fn check_height_universality(
    law_a: &OffspringLaw,
    law_b: &OffspringLaw,
    p: usize,
    replicates: usize,
    seed: u64,
) -> Result<CheckReport, LimitError> {
    require_critical(law_a)?;
    require_critical(law_b)?;
    require_replicates(replicates)?;
    if p == 0 {
        return Err(LimitError::bad("universality needs a positive vertex index"));
    }
    let parameters = CheckParameters::new(seed, replicates)
        .with_law(format!("{law_a}|{law_b}"))
        .with_size(p);
    let scale = (p as f64).sqrt();
    let factor_a = law_a.sigma2().sqrt() / 2.0;
    let factor_b = law_b.sigma2().sqrt() / 2.0;
    let sample_a = par_samples(seed, 14, replicates, |rng| {
        factor_a * (height_at_vertex(law_a, p, rng) as f64 + LATTICE_MIDPOINT) / scale
    });
    let sample_b = par_samples(seed, 15, replicates, |rng| {
        factor_b * (height_at_vertex(law_b, p, rng) as f64 + LATTICE_MIDPOINT) / scale
    });
    let two = two_sample_ks_test("height-universality", &sample_a, &sample_b, seed)?;
    let component = Component::from_pvalue(
        "normalized heights across laws",
        StatisticKind::TwoSampleKs,
        two.pvalue,
    );
    Ok(CheckReport::new("height-universality", parameters, vec![component]))
}

/// Exactness sweep over freshly sampled forests: decoded tree depths must
/// reproduce the height process, the height at probed times must equal the
/// literal count of prefix positions that are suffix minima of the coupled
/// walk, and the forest count must equal both one minus the running walk
/// minimum and one plus the number of completed trees.
///
/// # Errors
///
/// [`LimitError::BadParameters`] unless the law is critical, `nsteps ≥ 1`,
/// and there is at least one forest.
pub fn check_pathwise_identities(
    law: &OffspringLaw,
    nsteps: usize,
    forests: usize,
    seed: u64,
) -> Result<CheckReport, LimitError> {
    require_critical(law)?;
    require_replicates(forests)?;
    if nsteps == 0 {
        return Err(LimitError::bad("forests need at least one step"));
    }
    let parameters = CheckParameters::new(seed, forests)
        .with_law(law)
        .with_size(nsteps);
    let per_forest = par_samples(seed, 13, forests, |rng| {
        let forest =
            forest_height_process(law, nsteps, rng).expect("the law was checked critical");
        let values = forest.walk.values();
        let mut height_mismatch = 0u64;
        let mut counting_mismatch = 0u64;
        let mut index_mismatch = 0u64;

        // Decoded tree depths against the height process, and completed-tree
        // boundaries against the forest count, across the whole prefix.
        let (trees, _) = decode_forest(&forest.walk);
        let mut vertex = 0usize;
        for (t, tree) in trees.iter().enumerate() {
            for d in tree.depths() {
                if forest.heights[vertex] != d {
                    height_mismatch += 1;
                }
                if forest.tree_index[vertex] != t as u64 + 1 {
                    index_mismatch += 1;
                }
                vertex += 1;
            }
        }
        let complete = trees.len() as u64;
        for n in vertex..nsteps {
            if forest.tree_index[n] != complete + 1 {
                index_mismatch += 1;
            }
        }

        // The forest count against one minus the running walk minimum.
        let mut running_min = 0i64;
        for (n, v) in values.iter().enumerate().take(nsteps) {
            running_min = running_min.min(*v);
            if forest.tree_index[n] as i64 != 1 - running_min {
                index_mismatch += 1;
            }
        }

        // The literal counting identity at ~20 random probe times: the
        // height of vertex n is the number of j < n whose walk value is the
        // minimum of the walk over [j, n].
        for _ in 0..20 {
            let n = rng.random_range(0..nsteps);
            let mut suffix_min = values[n];
            let mut count = 0u64;
            for j in (0..n).rev() {
                if values[j] <= suffix_min {
                    count += 1;
                }
                suffix_min = suffix_min.min(values[j]);
            }
            if count != forest.heights[n] {
                counting_mismatch += 1;
            }
        }
        [height_mismatch, counting_mismatch, index_mismatch]
    });
    let mut totals = [0u64; 3];
    for row in per_forest {
        for (t, v) in totals.iter_mut().zip(row) {
            *t += v;
        }
    }
    let components = vec![
        Component::from_error("decoded depth mismatches", totals[0] as f64, 0.0),
        Component::from_error("height counting mismatches", totals[1] as f64, 0.0),
        Component::from_error("forest count mismatches", totals[2] as f64, 0.0),
    ];
    Ok(CheckReport::new("pathwise-identities", parameters, components))
}

fn require_replicates(replicates: usize) -> Result<(), LimitError> {
    if replicates == 0 {
        Err(LimitError::bad("at least one replicate is required"))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subcritical() -> OffspringLaw {
        OffspringLaw::table(vec![0.5, 0.2, 0.3]).expect("a valid table")
    }

    #[test]
    fn the_duration_transform_matches_its_closed_form_values() {
        assert_eq!(conditioned_duration_laplace(0.0), 1.0);
        let cases = [
            (0.125, 0.5819767068693265),
            (0.25, 0.45425628854366595),
            (0.5, 0.31303528549933135),
            (1.0, 0.17767809314739227),
            (2.0, 0.07462944145509619),
        ];
        for (lambda, want) in cases {
            assert!(
                (conditioned_duration_laplace(lambda) - want).abs() < 1e-15,
                "at {lambda}"
            );
        }
    }

    #[test]
    fn the_duration_transform_decreases_from_one() {
        let mut last = 1.0;
        for k in 1..60 {
            let v = conditioned_duration_laplace(k as f64 / 10.0);
            assert!(v < last && v > 0.0, "monotone at {k}");
            last = v;
        }
    }

    /// `P(max e ≤ x)` for a normalized excursion `e`: the theta-series
    /// `1 - 2·Σ_{k≥1} (4k²x² - 1)·exp(-2k²x²)`. Used as an exact oracle for
    /// the excursion sampler.
    fn excursion_max_cdf(x: f64) -> f64 {
        if x <= 0.2 {
            return 0.0;
        }
        let mut sum = 0.0f64;
        for k in 1..=64u32 {
            let kk = f64::from(k * k);
            let weight = (-2.0 * kk * x * x).exp();
            sum += (4.0 * kk * x * x - 1.0) * weight;
            if weight < 1e-18 {
                break;
            }
        }
        (1.0 - 2.0 * sum).clamp(0.0, 1.0)
    }

    #[test]
    fn the_excursion_max_law_integrates_to_the_known_mean() {
        // E[max e] = √(π/2), recovered as the integral of the survival
        // function.
        let h = 1e-4;
        let mut mean = 0.0;
        let mut x = h / 2.0;
        while x < 12.0 {
            mean += (1.0 - excursion_max_cdf(x)) * h;
            x += h;
        }
        let want = (std::f64::consts::PI / 2.0).sqrt();
        assert!((mean - want).abs() < 1e-6, "mean {mean} vs {want}");
        // CDF sanity: monotone (up to series round-off) and normalized.
        let mut last = 0.0;
        for k in 1..200 {
            let v = excursion_max_cdf(k as f64 * 0.02);
            assert!(
                (0.0..=1.0).contains(&v) && v >= last - 1e-9,
                "monotone at {k}: {v} after {last}"
            );
            last = v;
        }
        assert!(excursion_max_cdf(8.0) > 1.0 - 1e-12);
    }

    #[test]
    fn sampled_excursion_maxima_follow_the_exact_law() {
        // 2000 grid-sampled maxima against the theta-series CDF; the fine
        // grid keeps the discretization bias a fraction of the test band.
        let dt = 1.0 / 16384.0;
        let sample: Vec<f64> = (0..2000u64)
            .map(|k| {
                let mut rng = replicate_rng(53, k);
                vervaat_excursion(dt, &mut rng).max_value()
            })
            .collect();
        let record = ks_test("excursion-max", &sample, excursion_max_cdf, 53)
            .expect("a nonempty sample");
        assert!(
            record.pvalue > crate::report::PVALUE_THRESHOLD,
            "excursion maxima vs exact law: p = {}",
            record.pvalue
        );
    }

    #[test]
    fn moments_and_zscores_behave_on_flat_samples() {
        let (m, se) = mean_and_se(&[2.0, 2.0, 2.0, 2.0]);
        assert_eq!((m, se), (2.0, 0.0));
        assert_eq!(zscore(m, se, 2.0, 0.0), 0.0);
        assert!(zscore(m, se, 2.5, 0.0) > 1.0);
        let (v, se_v) = variance_and_se(&[1.0, 3.0]);
        assert!((v - 2.0).abs() < 1e-12);
        assert!(se_v >= 0.0);
    }

    #[test]
    fn non_critical_laws_are_rejected_up_front() {
        let law = subcritical();
        assert!(matches!(
            check_height_marginal(&law, 10, 10, 1),
            Err(LimitError::BadParameters { .. })
        ));
        assert!(matches!(
            check_ray_knight(1, 1),
            Err(LimitError::BadParameters { .. })
        ));
        assert!(matches!(
            check_local_time_joint(&OffspringLaw::Geometric, 0, 10, 1),
            Err(LimitError::BadParameters { .. })
        ));
        assert!(matches!(
            check_conditioned_size(&OffspringLaw::Binary, 4, 10, 1),
            Err(LimitError::BadParameters { .. })
        ));
        assert!(matches!(
            check_conditioned_height(&OffspringLaw::Poisson, 0.001, 4, 10, 1),
            Err(LimitError::BadParameters { .. })
        ));
        assert!(matches!(
            check_feller_limit(&OffspringLaw::Poisson, 10, 0, 1),
            Err(LimitError::BadParameters { .. })
        ));
    }

    #[test]
    fn degenerate_sizes_reduce_to_exact_components() {
        let report = check_height_marginal(&OffspringLaw::Geometric, 0, 50, 2).unwrap();
        assert!(report.pass, "{}", report.summary_line());
        assert_eq!(report.value(), 0.0);
        let report = check_contour_marginal(&OffspringLaw::Poisson, 0, 50, 3).unwrap();
        assert!(report.pass, "{}", report.summary_line());
        let report = check_local_time_joint(&OffspringLaw::Binary, 1, 60, 4).unwrap();
        assert!(report.pass, "{}", report.summary_line());
        assert_eq!(report.components.len(), 2);
        let report = check_conditioned_size(&OffspringLaw::Geometric, 1, 40, 5).unwrap();
        assert!(report.pass, "{}", report.summary_line());
    }

    #[test]
    fn reports_are_reproducible_for_fixed_seeds() {
        let a = check_height_marginal(&OffspringLaw::Geometric, 50, 200, 7).unwrap();
        let b = check_height_marginal(&OffspringLaw::Geometric, 50, 200, 7).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let c = check_height_marginal(&OffspringLaw::Geometric, 50, 200, 8).unwrap();
        assert_ne!(a.value(), c.value(), "a fresh seed moves the statistic");
    }

    #[test]
    fn pathwise_identities_hold_on_small_forests() {
        for law in [
            OffspringLaw::Geometric,
            OffspringLaw::Poisson,
            OffspringLaw::Binary,
        ] {
            let report = check_pathwise_identities(&law, 200, 40, 9).unwrap();
            assert!(report.pass, "{}", report.summary_line());
            assert_eq!(report.value(), 0.0);
        }
    }

    #[test]
    fn occupation_traces_are_consistent_inside_one_replicate() {
        let mut rng = replicate_rng(10, 0);
        for _ in 0..20 {
            let occ = reflected_occupations(&mut rng);
            assert!(occ[0] <= occ[1], "bands are nested");
            assert!(occ[1] <= RAY_KNIGHT_TMAX);
        }
    }
}
