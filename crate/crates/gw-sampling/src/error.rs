use thiserror::Error;

/// Errors produced by offspring-law construction and tree samplers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GwError {
    /// A sampler hit its configured budget (vertex cap or attempt cap).
    /// Near a critical law this signals the expected heavy tail of tree
    /// sizes, not a bug.
    #[error("sampling budget of {cap} exceeded")]
    BudgetExceeded {
        /// The exhausted budget.
        cap: usize,
    },

    /// The sum-conditioning rejection loop exhausted its attempt cap.
    #[error("rejection budget of {attempts} attempts exhausted")]
    RejectionBudget {
        /// The exhausted attempt cap.
        attempts: usize,
    },

    /// Conditioning on an event of probability zero.
    #[error("a tree with {n} vertices has probability zero under the law `{law}`")]
    Unsupported {
        /// The requested vertex count.
        n: usize,
        /// Textual form of the offspring law.
        law: String,
    },

    /// An offspring law that is not a critical or subcritical probability
    /// distribution.
    #[error("invalid offspring law: {reason}")]
    InvalidLaw {
        /// Human-readable description of the violated constraint.
        reason: String,
    },

    /// A value sequence that is not a valid downward-skip-free walk.
    #[error("invalid walk: {reason}")]
    InvalidWalk {
        /// Human-readable description of the violated constraint.
        reason: String,
    },
}
