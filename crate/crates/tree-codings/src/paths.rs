use crate::error::CodingError;
use crate::tree::OrderedTree;

/// The Łukasiewicz path of a tree with `p` vertices: `p + 1` values starting
/// at 0 and ending at -1, with all increments at least -1, staying
/// nonnegative before the final value.
///
/// Value `n + 1` minus value `n` is the number of children of vertex `n`
/// minus one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LukasiewiczPath {
    values: Vec<i64>,
}

impl LukasiewiczPath {
    /// Validates a raw value sequence as a Łukasiewicz path.
    ///
    /// # Errors
    ///
    /// Returns [`CodingError::InvalidPath`] when the sequence is shorter
    /// than two values, does not start at 0, does not end at -1, goes
    /// negative before its final value, or makes a downward step larger
    /// than 1.
    pub fn new(values: Vec<i64>) -> Result<Self, CodingError> {
        let invalid = |reason: String| Err(CodingError::InvalidPath { reason });
        if values.len() < 2 {
            return invalid(format!(
                "a Łukasiewicz path has at least 2 values, got {}",
                values.len()
            ));
        }
        if values[0] != 0 {
            return invalid(format!("path starts at {}, expected 0", values[0]));
        }
        let last = *values.last().expect("length checked above");
        if last != -1 {
            return invalid(format!("path ends at {last}, expected -1"));
        }
        for (n, window) in values.windows(2).enumerate() {
            if window[1] - window[0] < -1 {
                return invalid(format!(
                    "downward step of {} at index {n}, steps are at least -1",
                    window[1] - window[0]
                ));
            }
        }
        for (n, &x) in values[..values.len() - 1].iter().enumerate() {
            if x < 0 {
                return invalid(format!("value {x} at index {n} before the final step"));
            }
        }
        Ok(Self { values })
    }

    fn from_values_unchecked(values: Vec<i64>) -> Self {
        debug_assert!(Self::new(values.clone()).is_ok());
        Self { values }
    }

    /// The path values, `vertex_count() + 1` of them.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Number of vertices of the coded tree.
    pub fn vertex_count(&self) -> usize {
        self.values.len() - 1
    }
}

/// The height sequence of a tree: the depth of each vertex in depth-first
/// order. Starts at 0, never increases by more than 1, and stays positive
/// after the first entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeightSequence {
    values: Vec<u64>,
}

impl HeightSequence {
    /// Validates a raw value sequence as the height sequence of a single
    /// tree.
    ///
    /// # Errors
    ///
    /// Returns [`CodingError::InconsistentInput`] when the sequence is
    /// empty, does not start at 0, returns to 0 after the first entry, or
    /// increases by more than 1 in one step.
    pub fn new(values: Vec<u64>) -> Result<Self, CodingError> {
        let invalid = |reason: String| Err(CodingError::InconsistentInput { reason });
        if values.is_empty() {
            return invalid("height sequence is empty".to_owned());
        }
        if values[0] != 0 {
            return invalid(format!("height sequence starts at {}, expected 0", values[0]));
        }
        for (n, window) in values.windows(2).enumerate() {
            if window[1] > window[0] + 1 {
                return invalid(format!(
                    "height jumps from {} to {} at index {n}; upward steps are at most 1",
                    window[0], window[1]
                ));
            }
            if window[1] == 0 {
                return invalid(format!(
                    "height returns to 0 at index {}; only the root has height 0",
                    n + 1
                ));
            }
        }
        Ok(Self { values })
    }

    fn from_values_unchecked(values: Vec<u64>) -> Self {
        debug_assert!(Self::new(values.clone()).is_ok());
        Self { values }
    }

    /// The height values, one per vertex.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Number of vertices of the coded tree.
    pub fn vertex_count(&self) -> usize {
        self.values.len()
    }
}

/// The contour sequence of a tree with `p` vertices: `2 * p` values.
///
/// Indices `0..=2 * (p - 1)` hold the depth-first contour exploration (unit
/// up and down steps, starting and ending at 0, never negative); the final
/// index is padded with a zero so that per-tree contours concatenate into
/// forest contours.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContourSequence {
    values: Vec<u64>,
}

impl ContourSequence {
    /// Validates a raw value sequence as the padded contour of a single
    /// tree.
    ///
    /// # Errors
    ///
    /// Returns [`CodingError::InvalidPath`] when the length is odd or
    /// smaller than 2, the first or the last two values are not 0, or a
    /// step inside the exploration is not exactly ±1.
    pub fn new(values: Vec<u64>) -> Result<Self, CodingError> {
        let invalid = |reason: String| Err(CodingError::InvalidPath { reason });
        let len = values.len();
        if len < 2 || len % 2 != 0 {
            return invalid(format!(
                "a padded contour has even length at least 2, got {len}"
            ));
        }
        if values[0] != 0 {
            return invalid(format!("contour starts at {}, expected 0", values[0]));
        }
        if values[len - 2] != 0 || values[len - 1] != 0 {
            return invalid(
                "contour must end with the exploration back at 0 followed by one padding 0"
                    .to_owned(),
            );
        }
        // Steps inside the exploration, i.e. between indices 0..=len - 2;
        // the final step onto the padding zero is exempt.
        for (t, window) in values[..len - 1].windows(2).enumerate() {
            let diff = window[1] as i128 - window[0] as i128;
            if diff != 1 && diff != -1 {
                return invalid(format!(
                    "step from {} to {} at index {t}; exploration steps are exactly ±1",
                    window[0], window[1]
                ));
            }
        }
        Ok(Self { values })
    }

    fn from_values_unchecked(values: Vec<u64>) -> Self {
        debug_assert!(Self::new(values.clone()).is_ok());
        Self { values }
    }

    /// The contour values, `2 * vertex_count()` of them.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Number of vertices of the coded tree.
    pub fn vertex_count(&self) -> usize {
        self.values.len() / 2
    }
}

/// The Łukasiewicz path of a tree.
pub fn lukasiewicz_of(tree: &OrderedTree) -> LukasiewiczPath {
    let mut values = Vec::with_capacity(tree.vertex_count() + 1);
    let mut x: i64 = 0;
    values.push(x);
    for &c in tree.counts() {
        let c = i64::try_from(c).expect("child count fits in i64");
        x += c - 1;
        values.push(x);
    }
    LukasiewiczPath::from_values_unchecked(values)
}

/// Decodes a Łukasiewicz path back into a tree.
///
/// The counts sequence is read off the increments: vertex `n` has
/// `x[n + 1] - x[n] + 1` children.
pub fn tree_from_lukasiewicz(path: &LukasiewiczPath) -> OrderedTree {
    let counts = path
        .values()
        .windows(2)
        .map(|w| usize::try_from(w[1] - w[0] + 1).expect("increments are at least -1"))
        .collect();
    OrderedTree::from_counts_unchecked(counts)
}

/// The height sequence of a tree, computed definitionally from vertex
/// depths.
pub fn height_of(tree: &OrderedTree) -> HeightSequence {
    HeightSequence::from_values_unchecked(tree.depths())
}

/// Heights along a downward-skip-free walk, in `O(n)` time.
///
/// The input is the walk values `s[0..=n]` with `s[0] = 0` and all
/// increments at least -1. The height at index `n` is the number of indices
/// `j < n` at which the walk equals its running minimum over `j..=n`. The
/// returned vector has the same length as the input.
///
/// For the Łukasiewicz walk of a forest (tree paths concatenated), the
/// heights of the vertices of each tree appear at that tree's indices, so
/// this single routine serves both trees and forests.
///
/// # Errors
///
/// Returns [`CodingError::InvalidPath`] when the walk does not start at 0 or
/// makes a downward step larger than 1.
pub fn heights_from_walk(values: &[i64]) -> Result<Vec<u64>, CodingError> {
    if values.is_empty() {
        return Ok(Vec::new());
    }
    if values[0] != 0 {
        return Err(CodingError::InvalidPath {
            reason: format!("walk starts at {}, expected 0", values[0]),
        });
    }
    let mut heights = Vec::with_capacity(values.len());
    // Invariant on arrival at index n: `stack` holds, bottom to top in
    // nondecreasing order, the values s[j] over exactly those j < n with
    // s[j] = min(s[j..=n]). Its length is the height at n.
    let mut stack: Vec<i64> = Vec::new();
    for (n, window) in values.windows(2).enumerate() {
        heights.push(stack.len() as u64);
        let (cur, next) = (window[0], window[1]);
        let step = next - cur;
        if step < -1 {
            return Err(CodingError::InvalidPath {
                reason: format!("downward step of {step} at index {n}, steps are at least -1"),
            });
        }
        if step >= 0 {
            // The minimum over extended ranges is unchanged; index n joins.
            stack.push(cur);
        } else {
            // The walk drops below every entry equal to the current value.
            while stack.last() == Some(&cur) {
                stack.pop();
            }
        }
    }
    heights.push(stack.len() as u64);
    Ok(heights)
}

/// The height sequence read off a Łukasiewicz path in `O(n)`.
pub fn height_from_lukasiewicz(path: &LukasiewiczPath) -> HeightSequence {
    let mut heights =
        heights_from_walk(path.values()).expect("a valid Łukasiewicz path is a valid walk");
    heights.pop();
    HeightSequence::from_values_unchecked(heights)
}

/// The contour sequence of a tree, computed definitionally by a depth-first
/// traversal that records the running depth on arrival at each vertex and
/// after returning from each child.
pub fn contour_of(tree: &OrderedTree) -> ContourSequence {
    let p = tree.vertex_count();
    let children = tree.children();
    let mut values = Vec::with_capacity(2 * p);
    // (vertex, next child position) pairs along the current ancestral line.
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    let mut depth: u64 = 0;
    values.push(depth);
    while let Some((v, pos)) = stack.last_mut() {
        if *pos < children[*v].len() {
            let child = children[*v][*pos];
            *pos += 1;
            stack.push((child, 0));
            depth += 1;
            values.push(depth);
        } else {
            stack.pop();
            if !stack.is_empty() {
                depth -= 1;
                values.push(depth);
            }
        }
    }
    debug_assert_eq!(values.len(), 2 * p - 1);
    values.push(0);
    ContourSequence::from_values_unchecked(values)
}

/// Builds the padded contour of one tree from its height sequence.
///
/// Vertex `n` is first visited at contour index `2 * n - h[n]`; between
/// consecutive first visits the contour steps down by 1 per index, and after
/// the last vertex it descends to 0 and one padding zero is appended.
fn contour_from_tree_heights(heights: &[u64]) -> Vec<u64> {
    let p = heights.len();
    let mut values = Vec::with_capacity(2 * p);
    for n in 0..p {
        values.push(heights[n]);
        let floor = if n + 1 < p { heights[n + 1] - 1 } else { 0 };
        let mut v = heights[n];
        while v > floor {
            v -= 1;
            values.push(v);
        }
    }
    debug_assert_eq!(values.len(), 2 * p - 1);
    values.push(0);
    values
}

/// Reconstructs a forest contour from the forest height sequence and the
/// running minimum of the coupled Łukasiewicz walk.
///
/// `heights[n]` is the height of the `n`-th vertex of the forest and
/// `running_min[n]` is the running minimum of the forest's Łukasiewicz walk
/// at index `n`; vertex `n` belongs to tree `1 - running_min[n]` (1-based).
/// The result is the concatenation of the padded per-tree contour sequences
/// and has length `2 * heights.len()`.
///
/// # Errors
///
/// Returns [`CodingError::InconsistentInput`] when the slices have different
/// lengths or cannot have come from the same forest: the running minimum
/// must start at 0 and decrease by at most 1 per step, heights must be 0
/// exactly at tree starts, and heights may increase by at most 1 inside a
/// tree.
pub fn contour_from_height(
    heights: &[u64],
    running_min: &[i64],
) -> Result<Vec<u64>, CodingError> {
    let invalid = |reason: String| Err(CodingError::InconsistentInput { reason });
    if heights.len() != running_min.len() {
        return invalid(format!(
            "{} heights but {} running-minimum values",
            heights.len(),
            running_min.len()
        ));
    }
    if heights.is_empty() {
        return Ok(Vec::new());
    }
    if running_min[0] != 0 {
        return invalid(format!(
            "running minimum starts at {}, expected 0",
            running_min[0]
        ));
    }
    if heights[0] != 0 {
        return invalid(format!("first height is {}, expected 0", heights[0]));
    }
    let mut tree_starts = vec![0usize];
    for n in 1..heights.len() {
        let drop = running_min[n - 1] - running_min[n];
        if drop != 0 && drop != 1 {
            return invalid(format!(
                "running minimum moves from {} to {} at index {n}; it may only stay or decrease by 1",
                running_min[n - 1],
                running_min[n]
            ));
        }
        let starts_tree = drop == 1;
        if starts_tree {
            if heights[n] != 0 {
                return invalid(format!(
                    "vertex {n} starts a new tree but has height {}",
                    heights[n]
                ));
            }
            tree_starts.push(n);
        } else {
            if heights[n] == 0 {
                return invalid(format!(
                    "vertex {n} has height 0 but does not start a new tree"
                ));
            }
            if heights[n] > heights[n - 1] + 1 {
                return invalid(format!(
                    "height jumps from {} to {} at index {n}; upward steps are at most 1",
                    heights[n - 1],
                    heights[n]
                ));
            }
        }
    }
    tree_starts.push(heights.len());
    let mut contour = Vec::with_capacity(2 * heights.len());
    for window in tree_starts.windows(2) {
        contour.extend(contour_from_tree_heights(&heights[window[0]..window[1]]));
    }
    Ok(contour)
}

/// Decodes a padded contour sequence back into the tree it explores.
///
/// Every unit up-step opens a new vertex (a child of the vertex currently
/// under the contour); every unit down-step closes one.
pub fn tree_from_contour(contour: &ContourSequence) -> OrderedTree {
    let values = contour.values();
    let p = contour.vertex_count();
    let mut counts = vec![0usize];
    let mut stack = vec![0usize];
    for window in values[..2 * p - 1].windows(2) {
        if window[1] > window[0] {
            let v = counts.len();
            counts.push(0);
            let parent = *stack.last().expect("contour stays nonnegative");
            counts[parent] += 1;
            stack.push(v);
        } else {
            stack.pop();
        }
    }
    OrderedTree::from_counts_unchecked(counts)
}
