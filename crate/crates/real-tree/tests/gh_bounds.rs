//! Gromov-Hausdorff comparisons: the coding-function bound dominates the
//! exact distance on paired snapshots, the exact search behaves like a
//! metric, and enlarging a correspondence never shrinks its distortion.

mod common;

use excursion_lab::replicate_rng;
use rand::Rng;
use real_tree::{
    gh_exact, gh_upper_bound, metric_from_marked_tree, FiniteRootedMetric, MarkedTree,
};
use tree_codings::OrderedTree;

use common::{lattice_excursion, snapshot_metric};

#[test]
fn coding_bound_dominates_exact_distance_on_100_pairs() {
    let mut rng = replicate_rng(0x5EED_3301, 0);
    for rep in 0..100 {
        let half = 4 + rep % 13;
        let g = lattice_excursion(half, 0.5, 0.25, &mut rng);
        let h = lattice_excursion(half, 0.25, 0.25, &mut rng);
        // Snapshots at shared node times (plus the root at time 0).
        let mut times: Vec<f64> = (0..5)
            .map(|_| rng.random_range(0..=g.num_steps()) as f64 * g.dt())
            .collect();
        times.sort_by(f64::total_cmp);
        let a = snapshot_metric(&g, &times);
        let b = snapshot_metric(&h, &times);
        let exact = gh_exact(&a, &b).unwrap();
        let bound = gh_upper_bound(&g, &h).unwrap();
        assert!(
            exact <= bound + 1e-12,
            "replicate {rep}: exact {exact} exceeds bound {bound}"
        );
    }
}

#[test]
fn snapshots_of_one_path_are_at_distance_zero_from_themselves() {
    let mut rng = replicate_rng(0x5EED_3302, 0);
    let g = lattice_excursion(10, 0.5, 0.25, &mut rng);
    let times = [0.5, 1.25, 3.0];
    let a = snapshot_metric(&g, &times);
    assert_eq!(gh_exact(&a, &a).unwrap(), 0.0);
    assert_eq!(gh_upper_bound(&g, &g).unwrap(), 0.0);
}

#[test]
fn exact_distance_is_symmetric_on_random_snapshots() {
    let mut rng = replicate_rng(0x5EED_3303, 0);
    for rep in 0..20 {
        let g = lattice_excursion(5 + rep % 9, 0.5, 0.25, &mut rng);
        let h = lattice_excursion(4 + rep % 11, 0.5, 0.25, &mut rng);
        let ta: Vec<f64> = (0..3)
            .map(|_| rng.random_range(0..=g.num_steps()) as f64 * g.dt())
            .collect();
        let tb: Vec<f64> = (0..4)
            .map(|_| rng.random_range(0..=h.num_steps()) as f64 * h.dt())
            .collect();
        let a = snapshot_metric(&g, &ta);
        let b = snapshot_metric(&h, &tb);
        assert_eq!(gh_exact(&a, &b).unwrap(), gh_exact(&b, &a).unwrap());
    }
}

#[test]
fn realized_segments_of_length_one_and_two_are_at_distance_half() {
    let one = metric_from_marked_tree(&MarkedTree::new(OrderedTree::leaf(), vec![1.0]).unwrap());
    let two = metric_from_marked_tree(&MarkedTree::new(OrderedTree::leaf(), vec![2.0]).unwrap());
    assert_eq!(gh_exact(&one, &two).unwrap(), 0.5);
}

/// Distortion of a correspondence given as a list of index pairs.
fn distortion(a: &FiniteRootedMetric, b: &FiniteRootedMetric, pairs: &[(usize, usize)]) -> f64 {
    let mut dis = 0.0f64;
    for &(x, y) in pairs {
        for &(x2, y2) in pairs {
            dis = dis.max((a.distance(x, x2) - b.distance(y, y2)).abs());
        }
    }
    dis
}

#[test]
fn random_correspondences_never_beat_the_exact_search() {
    let mut rng = replicate_rng(0x5EED_3304, 0);
    for rep in 0..25 {
        let g = lattice_excursion(5 + rep % 7, 0.5, 0.25, &mut rng);
        let h = lattice_excursion(6 + rep % 5, 0.25, 0.25, &mut rng);
        let ta: Vec<f64> = (0..3)
            .map(|_| rng.random_range(0..=g.num_steps()) as f64 * g.dt())
            .collect();
        let tb: Vec<f64> = (0..3)
            .map(|_| rng.random_range(0..=h.num_steps()) as f64 * h.dt())
            .collect();
        let a = snapshot_metric(&g, &ta);
        let b = snapshot_metric(&h, &tb);
        let exact = gh_exact(&a, &b).unwrap();
        for _ in 0..50 {
            // A random union of two root-forced assignment maps ...
            let mut pairs = vec![(0usize, 0usize)];
            for x in 1..a.len() {
                pairs.push((x, rng.random_range(0..b.len())));
            }
            for y in 1..b.len() {
                pairs.push((rng.random_range(0..a.len()), y));
            }
            let dis = distortion(&a, &b, &pairs);
            assert!(
                dis >= 2.0 * exact - 1e-12,
                "replicate {rep}: a sampled correspondence has distortion {dis} below twice the exact distance {exact}"
            );
            // ... and enlarging it never shrinks the distortion.
            let mut larger = pairs.clone();
            for _ in 0..3 {
                larger.push((rng.random_range(0..a.len()), rng.random_range(0..b.len())));
            }
            assert!(distortion(&a, &b, &larger) >= dis);
        }
    }
}
