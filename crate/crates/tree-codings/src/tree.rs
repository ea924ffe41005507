use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{label_display, CodingError};

/// An Ulam–Harris label: the sequence of 1-based child numbers leading from
/// the root to a vertex. The root is the empty sequence.
pub type Label = Vec<usize>;

/// A finite rooted ordered tree with at least one vertex.
///
/// The canonical storage is the counts sequence `c`, where `c[n]` is the
/// number of children of the `n`-th vertex in depth-first order. A sequence
/// of length `p` is a valid counts sequence exactly when
/// `c[0] + … + c[n] >= n + 1` for every `n < p - 1` and the total equals
/// `p - 1`.
///
/// The textual form (via [`fmt::Display`] and [`FromStr`]) is the counts
/// sequence separated by single spaces, e.g. `"2 0 0"` for the tree whose
/// root has two leaf children.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedTree {
    counts: Vec<usize>,
}

impl OrderedTree {
    /// Builds a tree from its counts sequence, validating the prefix-sum
    /// characterisation.
    ///
    /// # Errors
    ///
    /// Returns [`CodingError::InconsistentInput`] if the sequence is empty,
    /// if some proper prefix has too few children to account for the
    /// vertices visited so far, or if the total number of children is not
    /// one less than the number of vertices.
    pub fn from_counts(counts: Vec<usize>) -> Result<Self, CodingError> {
        if counts.is_empty() {
            return Err(CodingError::InconsistentInput {
                reason: "counts sequence is empty".to_owned(),
            });
        }
        let p = counts.len();
        let mut sum: u128 = 0;
        for (n, &c) in counts.iter().enumerate() {
            sum += c as u128;
            if n < p - 1 && sum < (n + 1) as u128 {
                return Err(CodingError::InconsistentInput {
                    reason: format!(
                        "counts prefix of length {} sums to {}, fewer than the {} vertices it must cover",
                        n + 1,
                        sum,
                        n + 1
                    ),
                });
            }
        }
        if sum != (p - 1) as u128 {
            return Err(CodingError::InconsistentInput {
                reason: format!(
                    "counts sequence of length {p} sums to {sum}, expected {}",
                    p - 1
                ),
            });
        }
        Ok(Self { counts })
    }

    /// Builds a tree from a counts sequence already known to be valid.
    pub(crate) fn from_counts_unchecked(counts: Vec<usize>) -> Self {
        debug_assert!(Self::from_counts(counts.clone()).is_ok());
        Self { counts }
    }

    /// The single-vertex tree.
    pub fn leaf() -> Self {
        Self { counts: vec![0] }
    }

    /// Number of children of each vertex in depth-first order.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Consumes the tree and returns its counts sequence.
    pub fn into_counts(self) -> Vec<usize> {
        self.counts
    }

    /// Number of vertices (at least 1).
    pub fn vertex_count(&self) -> usize {
        self.counts.len()
    }

    /// Parent of each vertex in depth-first indexing; `None` for the root.
    pub fn parents(&self) -> Vec<Option<usize>> {
        let p = self.counts.len();
        let mut parents = vec![None; p];
        // Stack of (vertex, children not yet attached).
        let mut stack: Vec<(usize, usize)> = vec![(0, self.counts[0])];
        for (v, parent) in parents.iter_mut().enumerate().skip(1) {
            while matches!(stack.last(), Some(&(_, 0))) {
                stack.pop();
            }
            let (u, remaining) = stack
                .last_mut()
                .expect("valid counts sequence always provides a parent");
            *parent = Some(*u);
            *remaining -= 1;
            stack.push((v, self.counts[v]));
        }
        parents
    }

    /// Depth of each vertex in depth-first indexing; the root has depth 0.
    pub fn depths(&self) -> Vec<u64> {
        let parents = self.parents();
        let mut depths = vec![0u64; self.counts.len()];
        for (v, parent) in parents.iter().enumerate() {
            if let Some(u) = parent {
                depths[v] = depths[*u] + 1;
            }
        }
        depths
    }

    /// Children of each vertex in depth-first indexing, in birth order.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); self.counts.len()];
        for (v, parent) in self.parents().iter().enumerate() {
            if let Some(u) = parent {
                children[*u].push(v);
            }
        }
        children
    }

    /// True when every vertex has zero or exactly two children.
    pub fn is_binary(&self) -> bool {
        self.counts.iter().all(|&c| c == 0 || c == 2)
    }
}

impl fmt::Display for OrderedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.counts {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for OrderedTree {
    type Err = CodingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut counts = Vec::new();
        for token in s.split_whitespace() {
            let c: usize = token.parse().map_err(|_| CodingError::Parse {
                reason: format!("`{token}` is not a nonnegative child count"),
            })?;
            counts.push(c);
        }
        Self::from_counts(counts)
    }
}

/// Builds a tree from a set of Ulam–Harris labels.
///
/// Duplicate labels are collapsed. The resulting vertex order is the
/// lexicographic (depth-first) order of the labels.
///
/// # Errors
///
/// * [`CodingError::MissingRoot`] if the empty label is absent.
/// * [`CodingError::MissingParent`] if some non-root label's parent is
///   absent.
/// * [`CodingError::GapInChildren`] if some vertex has a child numbered `j`
///   but not `j - 1`.
/// * [`CodingError::InconsistentInput`] if a label contains the coordinate
///   0 (child numbers are 1-based).
pub fn tree_from_labels(labels: &[Label]) -> Result<OrderedTree, CodingError> {
    let set: BTreeSet<&Label> = labels.iter().collect();
    if !set.contains(&Vec::new()) {
        return Err(CodingError::MissingRoot);
    }
    for label in &set {
        if label.contains(&0) {
            return Err(CodingError::InconsistentInput {
                reason: format!(
                    "label `{}` contains the coordinate 0; child numbers are 1-based",
                    label_display(label)
                ),
            });
        }
        if let Some((&last, parent)) = label.split_last() {
            if !set.contains(&parent.to_vec()) {
                return Err(CodingError::MissingParent {
                    child: label_display(label),
                });
            }
            if last > 1 {
                let mut sibling = parent.to_vec();
                sibling.push(last - 1);
                if !set.contains(&sibling) {
                    return Err(CodingError::GapInChildren {
                        parent: label_display(parent),
                        found: last,
                        missing: last - 1,
                    });
                }
            }
        }
    }
    let mut child_counts: BTreeMap<&Label, usize> = BTreeMap::new();
    for label in &set {
        if let Some((&last, parent)) = label.split_last() {
            let parent = set
                .get(&parent.to_vec())
                .expect("parent presence was validated above");
            let entry = child_counts.entry(parent).or_insert(0);
            *entry = (*entry).max(last);
        }
    }
    let counts = set
        .iter()
        .map(|label| child_counts.get(label).copied().unwrap_or(0))
        .collect();
    OrderedTree::from_counts(counts)
}

/// The Ulam–Harris labels of a tree's vertices in depth-first order.
///
/// This inverts [`tree_from_labels`]: feeding the result back reproduces the
/// tree exactly.
pub fn labels_of(tree: &OrderedTree) -> Vec<Label> {
    let p = tree.vertex_count();
    let parents = tree.parents();
    let mut next_child = vec![0usize; p];
    let mut labels: Vec<Label> = vec![Vec::new(); p];
    for v in 1..p {
        let u = parents[v].expect("non-root vertices have parents");
        next_child[u] += 1;
        let mut label = labels[u].clone();
        label.push(next_child[u]);
        labels[v] = label;
    }
    labels
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cherry_counts_roundtrip_text() {
        let t: OrderedTree = "2 0 0".parse().unwrap();
        assert_eq!(t.counts(), &[2, 0, 0]);
        assert_eq!(t.to_string(), "2 0 0");
        assert_eq!(t.vertex_count(), 3);
    }

    #[test]
    fn leaf_tree() {
        let t = OrderedTree::leaf();
        assert_eq!(t.counts(), &[0]);
        assert_eq!(t.to_string(), "0");
        assert_eq!(t.parents(), vec![None]);
        assert_eq!(t.depths(), vec![0]);
    }

    #[test]
    fn invalid_counts_rejected() {
        assert!(matches!(
            OrderedTree::from_counts(vec![]),
            Err(CodingError::InconsistentInput { .. })
        ));
        // Total must be p - 1.
        assert!(OrderedTree::from_counts(vec![1, 0]).is_ok());
        assert!(OrderedTree::from_counts(vec![2, 0]).is_err());
        // The prefix condition fails: the second vertex closes the tree too
        // early for the third to exist.
        assert!(OrderedTree::from_counts(vec![1, 0, 1]).is_err());
    }

    #[test]
    fn parents_and_depths_of_caterpillar() {
        // Root -> child -> grandchild, plus a second child of the root.
        let t = OrderedTree::from_counts(vec![2, 1, 0, 0]).unwrap();
        assert_eq!(t.parents(), vec![None, Some(0), Some(1), Some(0)]);
        assert_eq!(t.depths(), vec![0, 1, 2, 1]);
        assert_eq!(t.children(), vec![vec![1, 3], vec![2], vec![], vec![]]);
    }

    #[test]
    fn labels_roundtrip() {
        let labels: Vec<Label> = vec![vec![], vec![1], vec![1, 1], vec![1, 2], vec![2]];
        let t = tree_from_labels(&labels).unwrap();
        assert_eq!(t.counts(), &[2, 2, 0, 0, 0]);
        assert_eq!(labels_of(&t), labels);
    }

    #[test]
    fn label_validation_errors() {
        assert_eq!(tree_from_labels(&[vec![1]]), Err(CodingError::MissingRoot));
        let err = tree_from_labels(&[vec![], vec![1, 1]]).unwrap_err();
        assert_eq!(
            err,
            CodingError::MissingParent {
                child: "1.1".to_owned()
            }
        );
        let err = tree_from_labels(&[vec![], vec![2]]).unwrap_err();
        assert_eq!(
            err,
            CodingError::GapInChildren {
                parent: "root".to_owned(),
                found: 2,
                missing: 1,
            }
        );
        assert!(matches!(
            tree_from_labels(&[vec![], vec![0]]),
            Err(CodingError::InconsistentInput { .. })
        ));
    }

    #[test]
    fn duplicate_labels_collapse() {
        let t = tree_from_labels(&[vec![], vec![1], vec![1]]).unwrap();
        assert_eq!(t.counts(), &[1, 0]);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!(
            "2 x 0".parse::<OrderedTree>(),
            Err(CodingError::Parse { .. })
        ));
        assert!(matches!(
            "2 0 0 0".parse::<OrderedTree>(),
            Err(CodingError::InconsistentInput { .. })
        ));
    }
}
