use thiserror::Error;

/// Errors produced by tree constructors and coding conversions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodingError {
    /// A label set does not contain the empty label, i.e. it has no root.
    #[error("label set has no root")]
    MissingRoot,

    /// A non-root label whose parent label is absent from the set.
    #[error("parent of label `{child}` is missing from the label set")]
    MissingParent {
        /// Dotted rendering of the orphaned label.
        child: String,
    },

    /// The children of some vertex do not form an initial segment `1..=k`.
    #[error("vertex `{parent}` has a child numbered {found} but none numbered {missing}")]
    GapInChildren {
        /// Dotted rendering of the parent label (`root` for the root).
        parent: String,
        /// A child number that is present.
        found: usize,
        /// A smaller child number that is absent.
        missing: usize,
    },

    /// A sequence of integers is not a valid path of the requested kind.
    #[error("invalid path: {reason}")]
    InvalidPath {
        /// Human-readable description of the violated constraint.
        reason: String,
    },

    /// Paired inputs that cannot have come from the same tree or forest.
    #[error("inconsistent input: {reason}")]
    InconsistentInput {
        /// Human-readable description of the mismatch.
        reason: String,
    },

    /// A size argument exceeds the supported enumeration limit.
    #[error("size {got} exceeds the supported maximum {max}")]
    TooLarge {
        /// The requested size.
        got: usize,
        /// The largest supported size.
        max: usize,
    },

    /// An exact count does not fit in `u128`.
    #[error("exact count exceeds the u128 range")]
    Overflow,

    /// A textual representation could not be parsed.
    #[error("parse error: {reason}")]
    Parse {
        /// Human-readable description of the malformed token.
        reason: String,
    },
}

/// Renders an Ulam–Harris label for error messages: `root`, `2`, `2.1.3`, …
pub(crate) fn label_display(label: &[usize]) -> String {
    if label.is_empty() {
        "root".to_owned()
    } else {
        label
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}
