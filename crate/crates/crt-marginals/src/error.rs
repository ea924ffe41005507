use thiserror::Error;

/// Errors for marginal-law evaluation and sampling.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrtError {
    /// The density formulas apply to binary skeletons only (every vertex
    /// with zero or exactly two children).
    #[error("the marked tree's skeleton is not binary")]
    NonBinarySkeleton,
    /// A leaf count outside the supported range was requested.
    #[error("invalid leaf count {got}: need at least {min}")]
    InvalidLeafCount { got: usize, min: usize },
    /// The joint law over trees and durations needs a duration argument.
    #[error("this normalization requires a duration argument")]
    MissingDuration,
    /// The marked tree does not have the leaf count the law was built for.
    #[error("the law is for {expected} leaves but the tree has {got}")]
    LeafCountMismatch { expected: usize, got: usize },
}
