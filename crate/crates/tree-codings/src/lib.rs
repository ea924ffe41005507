//! Bijective codings of finite rooted ordered trees.
//!
//! A finite rooted ordered tree on `p` vertices is stored as its *counts
//! sequence*: the number of children of each vertex, listed in depth-first
//! (lexicographic) order. This crate provides
//!
//! * validated conversions between Ulam–Harris label sets, counts sequences,
//!   Łukasiewicz paths, height sequences, and contour sequences,
//! * an `O(n)` reconstruction of the height sequence from a Łukasiewicz walk,
//!   including concatenated walks that encode forests,
//! * exact enumeration of all ordered trees of a given size, and exact
//!   counting of binary shapes and of labelled binary trees.
//!
//! Every conversion is an exact integer algorithm; all round trips are
//! lossless and are enforced by the validating constructors of the coding
//! types.
//!
//! # Conventions
//!
//! * Vertices are indexed `0..p` in depth-first order; vertex 0 is the root.
//! * The Łukasiewicz path of a tree with `p` vertices has `p + 1` values,
//!   starts at 0, ends at -1, and stays nonnegative before the final step.
//! * The height sequence lists the depth of each vertex in depth-first
//!   order.
//! * The contour sequence of a tree with `p` vertices has exactly `2 * p`
//!   values: the depth-first contour exploration occupies indices
//!   `0..=2 * (p - 1)` and the remaining index is padded with a zero, so
//!   that concatenating per-tree contours matches the contour of a forest.

mod count;
mod error;
mod paths;
mod tree;

pub use count::{
    count_binary_skeletons, count_labelled_binary, enumerate_trees, MAX_ENUMERATION_SIZE,
};
pub use error::CodingError;
pub use paths::{
    contour_from_height, contour_of, height_from_lukasiewicz, height_of, heights_from_walk,
    lukasiewicz_of, tree_from_contour, tree_from_lukasiewicz, ContourSequence, HeightSequence,
    LukasiewiczPath,
};
pub use tree::{labels_of, tree_from_labels, Label, OrderedTree};
