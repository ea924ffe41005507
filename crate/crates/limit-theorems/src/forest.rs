//! Per-replicate extractors on sampled forests: single height, contour, and
//! tree-index values, population counts, and height-conditioned growth with
//! an explicit size cap.

use gw_sampling::{
    decode_forest, forest_height_process, sample_conditioned_height_with_budget, GwError,
    OffspringLaw,
};
use rand::Rng;

use crate::error::LimitError;

/// Attempt budget for height-conditioned growth; chosen odd so it can never
/// collide with the even vertex caps used by the checks, which lets the two
/// budget-exhaustion errors be told apart.
const GROWTH_ATTEMPTS: usize = 1_000_001;

/// The contour value of a forest exploration at integer contour time `k`,
/// computed from the vertex heights alone.
///
/// Vertex `n` (in depth-first order across the forest, each tree's contour
/// padded to twice its vertex count) is first visited at contour time
/// `t_n = 2n − H_n`, which is strictly increasing in `n`. Between two
/// consecutive first visits the contour descends one level per step and
/// then ascends to the next vertex, so its value at `k` is the larger of
/// the two linear interpolants, clamped at zero across tree boundaries.
///
/// # Panics
///
/// Panics when `heights` is empty or does not reach past `k` (it must hold
/// at least one vertex with `t_n ≥ k`; exploring `k + 1` vertices always
/// suffices because `t_n ≥ n`).
pub fn contour_value_at(heights: &[u64], k: usize) -> u64 {
    assert!(!heights.is_empty(), "needs at least one explored vertex");
    let k = k as u64;
    let visit = |n: usize| 2 * n as u64 - heights[n];
    let last = heights.len() - 1;
    assert!(
        visit(last) >= k,
        "the explored prefix ends before contour time {k}"
    );
    // Largest n with t_n ≤ k, by binary search on the increasing t_n.
    let (mut lo, mut hi) = (0usize, last);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if visit(mid) <= k {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let n = lo;
    if visit(n) == k {
        return heights[n];
    }
    let down = heights[n] as i64 - (k - visit(n)) as i64;
    let up = heights[n + 1] as i64 - (visit(n + 1) - k) as i64;
    down.max(up).max(0) as u64
}

/// Height of vertex `p` in a fresh forest exploration.
pub(crate) fn height_at_vertex<R: Rng + ?Sized>(
    law: &OffspringLaw,
    p: usize,
    rng: &mut R,
) -> u64 {
    let forest = forest_height_process(law, p + 1, rng).expect("the law was checked critical");
    forest.heights[p]
}

/// Contour value at contour time `k` in a fresh forest exploration.
pub(crate) fn contour_at<R: Rng + ?Sized>(law: &OffspringLaw, k: usize, rng: &mut R) -> u64 {
    let forest = forest_height_process(law, k + 1, rng).expect("the law was checked critical");
    contour_value_at(&forest.heights, k)
}

/// The tree index of the `p`-th explored vertex (1-based count of trees
/// started), plus exactness flags for its two defining identities.
pub(crate) struct TreeIndexDraw {
    /// Tree index of vertex `p − 1`.
    pub index: u64,
    /// Whether the index equals one minus the walk's running minimum.
    pub walk_identity: bool,
    /// Whether the index equals one plus the number of completed trees
    /// before the vertex (checked only when `deep` was requested).
    pub boundary_identity: bool,
}

/// Samples the tree index of vertex `p − 1` in a fresh exploration and
/// re-derives it from the walk minimum and (optionally) from the decoded
/// tree boundaries.
pub(crate) fn tree_index_at<R: Rng + ?Sized>(
    law: &OffspringLaw,
    p: usize,
    deep: bool,
    rng: &mut R,
) -> TreeIndexDraw {
    assert!(p >= 1, "the exploration needs at least one vertex");
    let forest = forest_height_process(law, p, rng).expect("the law was checked critical");
    let index = forest.tree_index[p - 1];
    let running_min = forest.walk.values()[..p]
        .iter()
        .copied()
        .min()
        .expect("the walk has values");
    let walk_identity = index as i64 == 1 - running_min;
    let boundary_identity = if deep {
        let (trees, _) = decode_forest(&forest.walk);
        let mut completed_before = 0u64;
        let mut covered = 0usize;
        for t in &trees {
            if covered + t.vertex_count() < p {
                completed_before += 1;
                covered += t.vertex_count();
            } else {
                break;
            }
        }
        index == completed_before + 1
    } else {
        true
    };
    TreeIndexDraw {
        index,
        walk_identity,
        boundary_identity,
    }
}

/// The population size after `gens` generations of branching, starting
/// from `start` independent ancestors.
pub(crate) fn population_terminal<R: Rng + ?Sized>(
    law: &OffspringLaw,
    start: usize,
    gens: usize,
    rng: &mut R,
) -> u64 {
    let mut z = start as u64;
    for _ in 0..gens {
        let mut next = 0u64;
        for _ in 0..z {
            next += law.sample_offspring(rng) as u64;
        }
        z = next;
        if z == 0 {
            break;
        }
    }
    z
}

/// Outcome of one height-conditioned growth with a vertex cap.
pub(crate) enum GrowthOutcome {
    /// The conditioned tree closed within the cap.
    Accepted {
        /// Its vertex count.
        vertices: usize,
        /// Its height.
        height: u64,
    },
    /// Growth exceeded the vertex cap. Under a critical law a tree this
    /// large has reached any height threshold `m ≪ √cap` up to an
    /// exponentially small event, so cap hits are scored as accepted trees
    /// of at-least-cap size whose exact height is unknown.
    CapHit,
}

/// Grows one tree conditioned to reach height `m`, giving up on trees that
/// exceed `vertex_cap` vertices.
pub(crate) fn conditioned_height_outcome<R: Rng + ?Sized>(
    law: &OffspringLaw,
    m: u64,
    vertex_cap: usize,
    rng: &mut R,
) -> Result<GrowthOutcome, LimitError> {
    assert_ne!(
        vertex_cap, GROWTH_ATTEMPTS,
        "the caps must stay distinguishable"
    );
    match sample_conditioned_height_with_budget(law, m, GROWTH_ATTEMPTS, vertex_cap, rng) {
        Ok(tree) => {
            let height = tree
                .depths()
                .into_iter()
                .max()
                .expect("trees have at least the root");
            Ok(GrowthOutcome::Accepted {
                vertices: tree.vertex_count(),
                height,
            })
        }
        Err(GwError::BudgetExceeded { cap }) if cap == vertex_cap => Ok(GrowthOutcome::CapHit),
        Err(e) => Err(e.into()),
    }
}
