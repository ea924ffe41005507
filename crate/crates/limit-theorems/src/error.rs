use thiserror::Error;

/// Errors produced while assembling a check.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LimitError {
    /// A tree or walk sampler failed.
    #[error(transparent)]
    Branching(#[from] gw_sampling::GwError),

    /// A continuous-path sampler or statistic failed.
    #[error(transparent)]
    Path(#[from] excursion_lab::ExcursionError),

    /// The check was invoked with unusable parameters.
    #[error("invalid check parameters: {reason}")]
    BadParameters {
        /// What was wrong with the parameters.
        reason: String,
    },
}

impl LimitError {
    pub(crate) fn bad(reason: impl Into<String>) -> Self {
        Self::BadParameters {
            reason: reason.into(),
        }
    }
}
