//! Samplers for Brownian paths, excursions, local time, and the Feller
//! branching diffusion.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::error::ExcursionError;
use crate::grid::{steps_for, PathGrid, ReflectedPathWithLocalTime};

/// Default step budget for [`excursion_height_gt`].
pub const DEFAULT_STEP_BUDGET: usize = 20_000_000;

/// A deterministic random stream for one replicate of a seeded experiment.
///
/// Distinct replicate indices select statistically independent streams of the
/// same generator, so replicates may run concurrently and still reproduce
/// bit-for-bit given `(seed, replicate)`.
pub fn replicate_rng(seed: u64, replicate: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(replicate);
    rng
}

/// Standard Brownian motion started at zero: independent centered Gaussian
/// increments of variance `dt`. Exact in distribution at the grid points.
///
/// # Panics
///
/// Panics unless `dt > 0` and `dt` divides `total_time ≥ dt`.
pub fn sample_bm<R: Rng + ?Sized>(dt: f64, total_time: f64, rng: &mut R) -> PathGrid {
    let n = steps_for(dt, total_time);
    let sd = dt.sqrt();
    let mut values = Vec::with_capacity(n + 1);
    values.push(0.0);
    for _ in 0..n {
        let z: f64 = rng.sample(StandardNormal);
        values.push(values.last().unwrap() + sd * z);
    }
    PathGrid::new(dt, values)
}

/// Reflected Brownian motion together with its local time at zero.
///
/// Uses the identity in law between `(B − min B, −min B)` and a reflected
/// Brownian motion paired with its local time at zero; the pair is exact in
/// distribution at the grid points, the path is nonnegative, and the local
/// time is nondecreasing from zero.
///
/// # Panics
///
/// Panics unless `dt > 0` and `dt` divides `total_time ≥ dt`.
pub fn reflected_bm_with_local_time<R: Rng + ?Sized>(
    dt: f64,
    total_time: f64,
    rng: &mut R,
) -> ReflectedPathWithLocalTime {
    let bm = sample_bm(dt, total_time, rng);
    let mut running_min = 0.0f64;
    let mut path = Vec::with_capacity(bm.values().len());
    let mut ltime = Vec::with_capacity(bm.values().len());
    for &b in bm.values() {
        running_min = running_min.min(b);
        path.push(b - running_min);
        ltime.push(-running_min);
    }
    ReflectedPathWithLocalTime::new(PathGrid::new(dt, path), ltime)
}

/// The normalized Brownian excursion on `[0, 1]`.
///
/// Samples a Brownian bridge and rotates it cyclically at its minimum; the
/// output has both endpoints exactly zero and is nonnegative at every grid
/// point.
///
/// # Panics
///
/// Panics unless `dt` is positive and divides 1.
pub fn vervaat_excursion<R: Rng + ?Sized>(dt: f64, rng: &mut R) -> PathGrid {
    let n = steps_for(dt, 1.0);
    let bm = sample_bm(dt, 1.0, rng);
    let terminal = *bm.values().last().unwrap();
    let bridge: Vec<f64> = bm
        .values()
        .iter()
        .enumerate()
        .map(|(k, &b)| b - (k as f64 / n as f64) * terminal)
        .collect();
    let mut argmin = 0;
    for k in 1..n {
        if bridge[k] < bridge[argmin] {
            argmin = k;
        }
    }
    let floor = bridge[argmin];
    let values: Vec<f64> = (0..=n).map(|j| bridge[(argmin + j) % n] - floor).collect();
    PathGrid::new(dt, values)
}

/// Excursion-measure mass of the set of excursions whose maximum exceeds
/// `h`, namely `1/(2h)`.
///
/// # Panics
///
/// Panics unless `h > 0`.
pub fn height_excursion_mass(h: f64) -> f64 {
    assert!(h > 0.0, "the height threshold must be positive");
    1.0 / (2.0 * h)
}

/// First excursion of a reflected Brownian motion whose height reaches `h`,
/// run until its return to zero, with the default step budget.
///
/// See [`excursion_height_gt_capped`].
pub fn excursion_height_gt<R: Rng + ?Sized>(
    h: f64,
    dt: f64,
    rng: &mut R,
) -> Result<PathGrid, ExcursionError> {
    excursion_height_gt_capped(h, dt, DEFAULT_STEP_BUDGET, rng)
}

/// First excursion of a reflected Brownian motion whose height reaches `h`,
/// run until its return to zero.
///
/// Simulates `B − min B`; an excursion starts after each fresh running
/// minimum (where the reflected path is exactly zero) and the first one whose
/// maximum reaches `h` is returned once it closes. Its law is the
/// excursion-measure law conditioned on the maximum exceeding `h`, whose
/// total mass is [`height_excursion_mass`].
///
/// # Errors
///
/// Returns [`ExcursionError::BudgetExceeded`] when the qualifying excursion
/// has not closed within `max_steps` simulation steps.
///
/// # Panics
///
/// Panics unless `h > 0` and `dt > 0`.
pub fn excursion_height_gt_capped<R: Rng + ?Sized>(
    h: f64,
    dt: f64,
    max_steps: usize,
    rng: &mut R,
) -> Result<PathGrid, ExcursionError> {
    assert!(h > 0.0, "the height threshold must be positive");
    assert!(dt > 0.0 && dt.is_finite(), "grid step must be positive");
    let sd = dt.sqrt();
    let mut b = 0.0f64;
    let mut running_min = 0.0f64;
    let mut current = vec![0.0f64];
    let mut reached = false;
    for _ in 0..max_steps {
        let z: f64 = rng.sample(StandardNormal);
        b += sd * z;
        if b <= running_min {
            // Fresh running minimum: the reflected path touches zero and the
            // current excursion closes.
            running_min = b;
            if reached {
                current.push(0.0);
                return Ok(PathGrid::new(dt, current));
            }
            current.clear();
            current.push(0.0);
        } else {
            let r = b - running_min;
            current.push(r);
            if r >= h {
                reached = true;
            }
        }
    }
    Err(ExcursionError::BudgetExceeded { cap: max_steps })
}

/// The branching diffusion `dX = sigma·√X dB` started at `x0`.
///
/// Explicit Euler scheme with full truncation inside the square root and
/// absorption at the first nonpositive value; zero is a trap.
///
/// # Panics
///
/// Panics unless `sigma > 0`, `x0 ≥ 0`, and `dt` divides `total_time ≥ dt`.
pub fn feller_diffusion<R: Rng + ?Sized>(
    sigma: f64,
    x0: f64,
    dt: f64,
    total_time: f64,
    rng: &mut R,
) -> PathGrid {
    assert!(sigma > 0.0, "the diffusion coefficient must be positive");
    assert!(x0 >= 0.0, "the starting point must be nonnegative");
    let n = steps_for(dt, total_time);
    let sd = dt.sqrt();
    let mut values = Vec::with_capacity(n + 1);
    values.push(x0);
    let mut x = x0;
    let mut absorbed = x == 0.0;
    for _ in 0..n {
        if !absorbed {
            let z: f64 = rng.sample(StandardNormal);
            x += sigma * x.max(0.0).sqrt() * sd * z;
            if x <= 0.0 {
                x = 0.0;
                absorbed = true;
            }
        }
        values.push(x);
    }
    PathGrid::new(dt, values)
}

/// Local-time estimator `2·eps·N(eps)`: counts the completed positive
/// excursions of the path whose maximum reaches `eps`.
///
/// An excursion is a maximal run of consecutive strictly positive grid
/// values; it is completed when the path returns to a nonpositive value
/// before the end of the grid. Converges to the local time at zero as `eps`
/// shrinks (for paths resolving their zeros on the grid).
///
/// # Panics
///
/// Panics unless `eps > 0`.
pub fn local_time_via_counts(path: &PathGrid, eps: f64) -> f64 {
    assert!(eps > 0.0, "the excursion height cutoff must be positive");
    let mut count = 0usize;
    let mut current_max = f64::NEG_INFINITY;
    for &v in path.values() {
        if v > 0.0 {
            current_max = current_max.max(v);
        } else {
            if current_max >= eps {
                count += 1;
            }
            current_max = f64::NEG_INFINITY;
        }
    }
    2.0 * eps * count as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replicate_streams_reproduce_and_differ() {
        let mut a = replicate_rng(7, 0);
        let mut b = replicate_rng(7, 0);
        let mut c = replicate_rng(7, 1);
        let xa: u64 = a.random();
        let xb: u64 = b.random();
        let xc: u64 = c.random();
        assert_eq!(xa, xb);
        assert_ne!(xa, xc);
    }

    #[test]
    fn single_step_motion() {
        let mut rng = replicate_rng(1, 0);
        let p = sample_bm(0.5, 0.5, &mut rng);
        assert_eq!(p.values().len(), 2);
        assert_eq!(p.values()[0], 0.0);
    }

    #[test]
    fn reflected_path_invariants() {
        let mut rng = replicate_rng(2, 0);
        let r = reflected_bm_with_local_time(1e-3, 1.0, &mut rng);
        assert!(r.path.values().iter().all(|&v| v >= 0.0));
        assert!(r.ltime.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(r.ltime[0], 0.0);
        // Local time grows only when the path sits at zero.
        for (k, w) in r.ltime.windows(2).enumerate() {
            if w[1] > w[0] {
                assert_eq!(r.path.values()[k + 1], 0.0);
            }
        }
    }

    #[test]
    fn nonnegative_motion_keeps_zero_local_time() {
        // If the motion never dips below zero, the running minimum stays 0,
        // the local time is identically 0, and the path is the motion itself.
        let mut rng = replicate_rng(3, 0);
        loop {
            let clock_start = rng.clone();
            let bm = sample_bm(0.25, 1.0, &mut rng);
            if bm.values().iter().all(|&v| v >= 0.0) {
                let mut replay = clock_start;
                let r = reflected_bm_with_local_time(0.25, 1.0, &mut replay);
                assert!(r.ltime.iter().all(|&l| l == 0.0));
                assert_eq!(r.path.values(), bm.values());
                break;
            }
        }
    }

    #[test]
    fn excursion_endpoints_are_exactly_zero() {
        for seed in 0..20 {
            let mut rng = replicate_rng(4, seed);
            let e = vervaat_excursion(1.0 / 64.0, &mut rng);
            assert_eq!(e.values().len(), 65);
            assert!(e.is_excursion(), "seed {seed}");
            assert_eq!(e.values()[0], 0.0);
            assert_eq!(*e.values().last().unwrap(), 0.0);
        }
    }

    #[test]
    fn conditioned_excursion_reaches_its_height() {
        for seed in 0..10 {
            let mut rng = replicate_rng(5, seed);
            let e = excursion_height_gt(0.3, 1e-2, &mut rng).unwrap();
            assert!(e.is_excursion());
            assert!(e.max_value() >= 0.3, "seed {seed}");
            // Interior values are strictly positive.
            let inner = &e.values()[1..e.values().len() - 1];
            assert!(inner.iter().all(|&v| v > 0.0));
        }
    }

    #[test]
    fn excursion_budget_is_reported() {
        let mut rng = replicate_rng(6, 0);
        assert_eq!(
            excursion_height_gt_capped(5.0, 1e-3, 100, &mut rng),
            Err(ExcursionError::BudgetExceeded { cap: 100 })
        );
    }

    #[test]
    fn height_mass_constant() {
        assert!((height_excursion_mass(1.0) - 0.5).abs() < 1e-15);
        assert!((height_excursion_mass(0.25) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn absorbed_diffusion_stays_at_zero() {
        let mut rng = replicate_rng(7, 0);
        let p = feller_diffusion(2.0, 0.0, 1e-2, 1.0, &mut rng);
        assert!(p.values().iter().all(|&v| v == 0.0));

        // Once any trajectory is absorbed it never leaves zero.
        for seed in 0..50 {
            let mut rng = replicate_rng(8, seed);
            let p = feller_diffusion(3.0, 0.05, 1e-2, 1.0, &mut rng);
            if let Some(first) = p.values().iter().position(|&v| v == 0.0) {
                assert!(p.values()[first..].iter().all(|&v| v == 0.0));
            }
        }
    }

    #[test]
    fn excursion_counts_on_fixed_paths() {
        let flat = PathGrid::new(1.0, vec![0.0; 8]);
        assert_eq!(local_time_via_counts(&flat, 0.5), 0.0);

        let tent = PathGrid::new(1.0, vec![0.0, 0.5, 1.0, 0.5, 0.0]);
        assert!((local_time_via_counts(&tent, 0.5) - 1.0).abs() < 1e-15);
        // A cutoff above the tent's height counts nothing.
        assert_eq!(local_time_via_counts(&tent, 1.5), 0.0);

        // Two completed excursions (heights 1 and 2) and an open one at the
        // end that never counts.
        let path = PathGrid::new(1.0, vec![0.0, 1.0, 0.0, 2.0, 0.0, 3.0]);
        assert!((local_time_via_counts(&path, 0.5) - 2.0 * 0.5 * 2.0).abs() < 1e-15);
        assert!((local_time_via_counts(&path, 1.5) - 2.0 * 1.5 * 1.0).abs() < 1e-15);
    }
}
