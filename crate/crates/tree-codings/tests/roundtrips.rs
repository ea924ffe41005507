//! Property tests: every coding round-trips losslessly and the alternative
//! computations of each coding agree.

mod common;

use common::tree_from_free_counts;
use proptest::prelude::*;
use tree_codings::{
    contour_from_height, contour_of, height_from_lukasiewicz, height_of, heights_from_walk,
    labels_of, lukasiewicz_of, tree_from_contour, tree_from_labels, tree_from_lukasiewicz,
    ContourSequence, HeightSequence, LukasiewiczPath, OrderedTree,
};

fn arb_tree() -> impl Strategy<Value = OrderedTree> {
    prop::collection::vec(0usize..6, 0..60).prop_map(|raw| tree_from_free_counts(&raw))
}

fn arb_forest() -> impl Strategy<Value = Vec<OrderedTree>> {
    prop::collection::vec(arb_tree(), 1..5)
}

proptest! {
    #[test]
    fn lukasiewicz_roundtrip(t in arb_tree()) {
        let path = lukasiewicz_of(&t);
        prop_assert!(LukasiewiczPath::new(path.values().to_vec()).is_ok());
        prop_assert_eq!(path.vertex_count(), t.vertex_count());
        prop_assert_eq!(tree_from_lukasiewicz(&path), t);
    }

    #[test]
    fn labels_roundtrip(t in arb_tree()) {
        let labels = labels_of(&t);
        prop_assert_eq!(tree_from_labels(&labels).unwrap(), t.clone());
        // The label set carries no order: reversing it changes nothing.
        let reversed: Vec<_> = labels.into_iter().rev().collect();
        prop_assert_eq!(tree_from_labels(&reversed).unwrap(), t);
    }

    #[test]
    fn text_roundtrip(t in arb_tree()) {
        prop_assert_eq!(t.to_string().parse::<OrderedTree>().unwrap(), t);
    }

    #[test]
    fn heights_definitional_and_walk_based_agree(t in arb_tree()) {
        let by_depth = height_of(&t);
        prop_assert!(HeightSequence::new(by_depth.values().to_vec()).is_ok());
        let by_walk = height_from_lukasiewicz(&lukasiewicz_of(&t));
        prop_assert_eq!(by_depth, by_walk);
    }

    #[test]
    fn contour_roundtrip(t in arb_tree()) {
        let contour = contour_of(&t);
        prop_assert!(ContourSequence::new(contour.values().to_vec()).is_ok());
        prop_assert_eq!(contour.values().len(), 2 * t.vertex_count());
        prop_assert_eq!(tree_from_contour(&contour), t);
    }

    #[test]
    fn contour_from_height_matches_traversal_contour(t in arb_tree()) {
        let heights = height_of(&t);
        let running_min = vec![0i64; t.vertex_count()];
        let rebuilt = contour_from_height(heights.values(), &running_min).unwrap();
        let traversal = contour_of(&t);
        prop_assert_eq!(rebuilt.as_slice(), traversal.values());
    }

    #[test]
    fn first_visit_indices(t in arb_tree()) {
        // Vertex n is first visited by the contour at index 2n - h(n), and
        // these indices strictly increase.
        let h = height_of(&t);
        let c = contour_of(&t);
        let mut last: Option<u64> = None;
        for (n, &hn) in h.values().iter().enumerate() {
            let idx = 2 * n as u64 - hn;
            prop_assert_eq!(c.values()[idx as usize], hn);
            if let Some(prev) = last {
                prop_assert!(idx > prev);
            }
            last = Some(idx);
        }
    }

    #[test]
    fn forest_contour_concatenates(trees in arb_forest()) {
        let mut heights = Vec::new();
        let mut running_min = Vec::new();
        let mut walk = vec![0i64];
        let mut expected = Vec::new();
        for (k, t) in trees.iter().enumerate() {
            heights.extend_from_slice(height_of(t).values());
            running_min.extend(std::iter::repeat_n(-(k as i64), t.vertex_count()));
            let base = *walk.last().unwrap();
            walk.extend(lukasiewicz_of(t).values()[1..].iter().map(|x| base + x));
            expected.extend_from_slice(contour_of(t).values());
        }
        prop_assert_eq!(
            contour_from_height(&heights, &running_min).unwrap(),
            expected
        );
        // The forest walk reproduces the forest heights at vertex indices.
        let walk_heights = heights_from_walk(&walk).unwrap();
        prop_assert_eq!(&walk_heights[..heights.len()], heights.as_slice());
    }
}
