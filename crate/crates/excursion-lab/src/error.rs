use thiserror::Error;

/// Errors from the path samplers and the statistical kit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExcursionError {
    /// A simulation exhausted its step budget before completing.
    #[error("simulation budget of {cap} steps exhausted")]
    BudgetExceeded {
        /// The step budget that was exhausted.
        cap: usize,
    },
    /// A statistical routine received an empty sample.
    #[error("empty sample")]
    EmptySample,
}
