//! Finite trees with one nonnegative edge length per vertex, and their
//! extraction from a coding path at finitely many sample times.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use excursion_lab::PathGrid;
use tree_codings::OrderedTree;

use crate::error::TreeMetricError;

/// An ordered tree whose every vertex `v` carries a mark `>= 0`: the
/// length of the segment hanging below `v` (below the root vertex, the
/// segment down to the root point of the metric realization).
///
/// Marks are stored in depth-first order, matching the skeleton's vertex
/// numbering.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkedTree {
    skeleton: OrderedTree,
    marks: Vec<f64>,
}

impl MarkedTree {
    /// Builds a marked tree, checking that there is exactly one finite
    /// nonnegative mark per skeleton vertex.
    pub fn new(skeleton: OrderedTree, marks: Vec<f64>) -> Result<Self, TreeMetricError> {
        if marks.len() != skeleton.vertex_count() {
            return Err(TreeMetricError::InvalidMarks {
                reason: format!(
                    "{} marks for {} vertices",
                    marks.len(),
                    skeleton.vertex_count()
                ),
            });
        }
        if let Some(bad) = marks.iter().find(|m| !m.is_finite() || **m < 0.0) {
            return Err(TreeMetricError::InvalidMarks {
                reason: format!("mark {bad} is negative or not finite"),
            });
        }
        Ok(Self { skeleton, marks })
    }

    pub fn skeleton(&self) -> &OrderedTree {
        &self.skeleton
    }

    pub fn marks(&self) -> &[f64] {
        &self.marks
    }

    pub fn vertex_count(&self) -> usize {
        self.marks.len()
    }

    /// Sum of all marks: the total length of the metric realization.
    pub fn total_length(&self) -> f64 {
        self.marks.iter().sum()
    }

    /// Depth-first indices of the leaves (vertices with no children).
    pub fn leaves(&self) -> Vec<usize> {
        self.skeleton
            .counts()
            .iter()
            .enumerate()
            .filter(|(_, c)| **c == 0)
            .map(|(v, _)| v)
            .collect()
    }

    /// Distance from the root point to the top of each vertex's segment:
    /// the sum of marks along the path from the root.
    pub fn vertex_levels(&self) -> Vec<f64> {
        let parents = self.skeleton.parents();
        let mut levels = vec![0.0; self.marks.len()];
        for v in 0..self.marks.len() {
            levels[v] = match parents[v] {
                Some(p) => levels[p] + self.marks[v],
                None => self.marks[v],
            };
        }
        levels
    }

    /// Distance between the points at the tops of vertices `u` and `v` in
    /// the metric realization: levels minus twice the level of the deepest
    /// common ancestor (or the distance along the path when one is an
    /// ancestor of the other).
    pub fn vertex_distance(&self, u: usize, v: usize) -> f64 {
        let parents = self.skeleton.parents();
        let levels = self.vertex_levels();
        let mut ancestors = std::collections::HashSet::new();
        let mut x = Some(u);
        while let Some(w) = x {
            ancestors.insert(w);
            x = parents[w];
        }
        let mut y = Some(v);
        let join_level = loop {
            match y {
                Some(w) if ancestors.contains(&w) => break levels[w],
                Some(w) => y = parents[w],
                None => break 0.0,
            }
        };
        levels[u] + levels[v] - 2.0 * join_level
    }
}

#[derive(Serialize, Deserialize)]
struct MarkedTreeRepr {
    skeleton: String,
    marks: Vec<f64>,
}

impl Serialize for MarkedTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MarkedTreeRepr {
            skeleton: self.skeleton.to_string(),
            marks: self.marks.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MarkedTree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = MarkedTreeRepr::deserialize(deserializer)?;
        let skeleton: OrderedTree = repr.skeleton.parse().map_err(D::Error::custom)?;
        MarkedTree::new(skeleton, repr.marks).map_err(D::Error::custom)
    }
}

/// Reduced tree of the path `g` spanned by the given sample times.
///
/// `times` must be nonempty and sorted nondecreasing, with every entry in
/// `[0, span]`. The tree is built recursively:
///
/// * one time `t` gives a single vertex with mark `g(t)` (its distance
///   down to the root point);
/// * for `p >= 2` times the root vertex gets mark `m = min g` over
///   `[t_1, t_p]` (less the level already consumed by enclosing calls),
///   and the times split into consecutive groups at every gap `i` whose
///   interval minimum `min g over [t_i, t_{i+1}]` equals `m` **by exact
///   float equality** — those gaps are where the spanned subtree touches
///   its root — with one child subtree per group.
///
/// Ties in the minима are honored exactly, so vertices of any degree can
/// appear; for generic (e.g. Brownian) values the skeleton is binary.
///
/// Leaf `i` of the result corresponds to `t_i` in order, and the pairwise
/// leaf distances in the realization reproduce `d_g` on the sample times.
pub fn extract_marked_tree(g: &PathGrid, times: &[f64]) -> Result<MarkedTree, TreeMetricError> {
    if times.is_empty() || times.windows(2).any(|w| w[0] > w[1]) {
        return Err(TreeMetricError::BadTimes);
    }
    let span = g.duration();
    for &t in times {
        if !t.is_finite() || !(-1e-9..=span + 1e-9).contains(&t) {
            return Err(TreeMetricError::OutOfRange { time: t, span });
        }
    }
    let mut counts = Vec::new();
    let mut marks = Vec::new();
    build_reduced(g, times, 0.0, &mut counts, &mut marks);
    let skeleton = OrderedTree::from_counts(counts)
        .expect("the recursive construction always produces a valid child-count sequence");
    MarkedTree::new(skeleton, marks)
}

fn build_reduced(g: &PathGrid, times: &[f64], base: f64, counts: &mut Vec<usize>, marks: &mut Vec<f64>) {
    if times.len() == 1 {
        counts.push(0);
        marks.push(g.value_at(times[0]) - base);
        return;
    }
    let m = g.min_on(times[0], times[times.len() - 1]);
    let mut groups = Vec::new();
    let mut start = 0;
    for i in 0..times.len() - 1 {
        if g.min_on(times[i], times[i + 1]) == m {
            groups.push(&times[start..=i]);
            start = i + 1;
        }
    }
    groups.push(&times[start..]);
    debug_assert!(groups.len() >= 2, "the overall minimum is attained in some gap");
    counts.push(groups.len());
    marks.push(m - base);
    for group in groups {
        build_reduced(g, group, m, counts, marks);
    }
}
