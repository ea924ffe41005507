// Each integration-test binary compiles this module separately and uses a
// different subset of the helpers.
#![allow(dead_code)]

use excursion_lab::PathGrid;
use rand::seq::SliceRandom;
use rand::Rng;

use real_tree::{path_distance, FiniteRootedMetric};

/// A uniformly shuffled lattice excursion: `half_steps` up-moves and as
/// many down-moves of size `step`, one per grid step, cyclically rotated
/// at the first minimum of the resulting bridge so the path starts and
/// ends at exactly 0 and stays nonnegative.
///
/// Every value is a multiple of `step` and every level crossing happens at
/// a grid node, so for dyadic `step` and `dt` the distance computations on
/// these paths are exact in floating point.
pub fn lattice_excursion<R: Rng>(half_steps: usize, step: f64, dt: f64, rng: &mut R) -> PathGrid {
    assert!(half_steps >= 1);
    let n = 2 * half_steps;
    let mut moves: Vec<i64> = std::iter::repeat_n(1, half_steps)
        .chain(std::iter::repeat_n(-1, half_steps))
        .collect();
    moves.shuffle(rng);
    let mut bridge = Vec::with_capacity(n + 1);
    let mut x = 0i64;
    bridge.push(x);
    for mv in &moves {
        x += mv;
        bridge.push(x);
    }
    let mut min = i64::MAX;
    let mut argmin = 0usize;
    for (i, &v) in bridge.iter().enumerate().skip(1) {
        if v < min {
            min = v;
            argmin = i;
        }
    }
    let values: Vec<f64> = (0..=n)
        .map(|j| (bridge[(argmin + j) % n] - min) as f64 * step)
        .collect();
    PathGrid::new(dt, values)
}

/// A uniformly random grid-node time of `g`.
pub fn random_node_time<R: Rng>(g: &PathGrid, rng: &mut R) -> f64 {
    rng.random_range(0..=g.num_steps()) as f64 * g.dt()
}

/// The rooted metric on the points of `g` visited at time 0 (the root)
/// and at the given times, with distances evaluated through the coding
/// pseudometric.
pub fn snapshot_metric(g: &PathGrid, times: &[f64]) -> FiniteRootedMetric {
    let mut all = vec![0.0];
    all.extend_from_slice(times);
    let matrix: Vec<Vec<f64>> = all
        .iter()
        .map(|&s| {
            all.iter()
                .map(|&t| path_distance(g, s, t).unwrap())
                .collect()
        })
        .collect();
    FiniteRootedMetric::new(matrix, 0).expect("coded distances form a rooted metric")
}
