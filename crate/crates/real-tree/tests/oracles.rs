//! Property tests driving the tree-metric operations with fuzzed lattice
//! excursions.

mod common;

use excursion_lab::replicate_rng;
use proptest::prelude::*;
use rand::Rng;
use real_tree::{
    extract_marked_tree, gh_exact, path_distance, reroot, reroot_time, triangle_certificate,
};

use common::{lattice_excursion, random_node_time, snapshot_metric};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn pseudometric_axioms_hold_on_fuzzed_lattice_paths(seed in any::<u64>(), half in 2usize..24) {
        let mut rng = replicate_rng(seed, 0);
        let g = lattice_excursion(half, 0.5, 0.25, &mut rng);
        let (a, b, c) = (
            random_node_time(&g, &mut rng),
            random_node_time(&g, &mut rng),
            random_node_time(&g, &mut rng),
        );
        prop_assert_eq!(path_distance(&g, a, b).unwrap(), path_distance(&g, b, a).unwrap());
        prop_assert_eq!(path_distance(&g, c, c).unwrap(), 0.0);
        prop_assert!(path_distance(&g, a, c).unwrap() >= 0.0);
        prop_assert!(triangle_certificate(&g, a, b, c).unwrap());
    }

    #[test]
    fn extraction_yields_one_nonnegative_marked_leaf_per_time(
        seed in any::<u64>(),
        half in 2usize..20,
        p in 1usize..7,
    ) {
        let mut rng = replicate_rng(seed, 1);
        let g = lattice_excursion(half, 0.25, 0.5, &mut rng);
        let mut times: Vec<f64> = (0..p).map(|_| random_node_time(&g, &mut rng)).collect();
        times.sort_by(f64::total_cmp);
        let theta = extract_marked_tree(&g, &times).unwrap();
        prop_assert_eq!(theta.leaves().len(), p);
        prop_assert!(theta.marks().iter().all(|m| *m >= 0.0));
        let leaves = theta.leaves();
        for (i, &t) in times.iter().enumerate() {
            prop_assert_eq!(theta.vertex_levels()[leaves[i]], g.value_at(t));
        }
    }

    #[test]
    fn reroot_preserves_excursion_shape_and_distances(seed in any::<u64>(), half in 2usize..20) {
        let mut rng = replicate_rng(seed, 2);
        let g = lattice_excursion(half, 0.5, 0.25, &mut rng);
        let span = g.duration();
        let s0 = rng.random_range(0..g.num_steps()) as f64 * g.dt();
        let r = reroot(&g, s0).unwrap();
        prop_assert!(r.is_excursion());
        let s = random_node_time(&g, &mut rng);
        let t = random_node_time(&g, &mut rng);
        prop_assert_eq!(
            path_distance(&r, s, t).unwrap(),
            path_distance(&g, reroot_time(s, s0, span), reroot_time(t, s0, span)).unwrap()
        );
    }

    #[test]
    fn exact_distance_vanishes_between_a_snapshot_and_itself(
        seed in any::<u64>(),
        half in 2usize..16,
    ) {
        let mut rng = replicate_rng(seed, 3);
        let g = lattice_excursion(half, 0.5, 0.5, &mut rng);
        let times: Vec<f64> = (0..3).map(|_| random_node_time(&g, &mut rng)).collect();
        let a = snapshot_metric(&g, &times);
        prop_assert_eq!(gh_exact(&a, &a).unwrap(), 0.0);
    }
}
