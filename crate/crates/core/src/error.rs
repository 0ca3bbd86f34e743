use thiserror::Error;

/// Errors produced anywhere in the identification / estimation / forecasting pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input")]
    Empty,
    #[error("series too short: need at least {needed} observations, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("series has zero variance")]
    ZeroVariance,
    #[error("non-finite value at position {0}")]
    NonFinite(usize),
    #[error("timestamps must be strictly increasing (position {0})")]
    NonIncreasing(usize),
    #[error("differencing order {0} exceeds the supported maximum of 2")]
    DifferencingOrder(usize),
    #[error("expected {expected} differencing heads, got {got}")]
    HeadsMismatch { expected: usize, got: usize },
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("max lag {max_lag} must be positive and smaller than the series length {n}")]
    InvalidLag { max_lag: usize, n: usize },
    #[error("degenerate series: Durbin-Levinson recursion broke down at lag {0}")]
    Degenerate(usize),
    #[error("invalid model order: {0}")]
    InvalidOrder(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("numerical breakdown: {0}")]
    Numerical(String),
    #[error("optimizer failed to produce a finite log-likelihood")]
    OptimizerFailed,
    #[error("no candidate model could be fitted")]
    NoCandidate,
    #[error("zero actual value at position {0} (MAPE undefined)")]
    ZeroActual(usize),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("csv: {0}")]
    Csv(String),
    #[error("{label}: {source}")]
    Labeled {
        label: String,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
