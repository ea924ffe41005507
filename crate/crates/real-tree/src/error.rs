use thiserror::Error;

/// Errors for tree-metric construction and comparison.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TreeMetricError {
    /// A time argument fell outside the span of the coding function.
    #[error("time {time} lies outside the coded span [0, {span}]")]
    OutOfRange { time: f64, span: f64 },
    /// An operation that rotates a path cyclically was given a path whose
    /// endpoints are not both exactly zero.
    #[error("the path is not an excursion: it must start and end at exactly 0 and stay nonnegative")]
    NotAnExcursion,
    /// An input exceeded the size cap of an exhaustive routine.
    #[error("input of size {got} exceeds the exact-search cap of {max} points")]
    TooLarge { got: usize, max: usize },
    /// The sequence of sample times was empty or not sorted in
    /// nondecreasing order.
    #[error("sample times must be nonempty and sorted in nondecreasing order")]
    BadTimes,
    /// A marked tree was given marks that do not match its skeleton or
    /// that are negative or non-finite.
    #[error("invalid marks: {reason}")]
    InvalidMarks { reason: String },
    /// A distance matrix failed a metric-space or tree-metric check.
    #[error("invalid metric: {reason}")]
    InvalidMetric { reason: String },
    /// Two path grids that must share a common grid do not.
    #[error("path grids are not on a common grid (dt {dt_a} vs {dt_b}, {len_a} vs {len_b} values)")]
    MismatchedGrids {
        dt_a: f64,
        dt_b: f64,
        len_a: usize,
        len_b: usize,
    },
}
