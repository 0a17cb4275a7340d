use thiserror::Error;

/// Errors surfaced by validation and construction throughout the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("all amplitudes are below the zero threshold")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not Hermitian (asymmetry {0:.3e})")]
    NotHermitian(f64),
    #[error("operator trace {0:.3e} is not zero")]
    NotTraceZero(f64),
    #[error("density operator is not positive (min eigenvalue {0:.3e})")]
    NotPositive(f64),
    #[error("kets are not a mutually unbiased triple (worst overlap deviation {0:.3e})")]
    NotMubTriple(f64),
    #[error("pre/post states must be distinct and nonorthogonal (|overlap| = {0:.6})")]
    DegenerateEnsemble(f64),
    #[error("post-selection probability {0:.3e} is too small")]
    DegenerateGeneralizedEnsemble(f64),
    #[error("pre-selection eigenbasis contains the post-selected state")]
    EigenbasisContainsPost,
    #[error("channel parameter {p} outside the legal interval [{lo}, {hi})")]
    InvalidParameter { p: f64, lo: f64, hi: f64 },
    #[error("observable component is insensitive to the noise parameter (|slope| = {0:.3e})")]
    InsensitiveObservable(f64),
    #[error("operator lies outside the spanned subspace (relative residual {0:.3e})")]
    NotInR(f64),
    #[error("trial count must be at least 1")]
    InvalidTrials,
    #[error("sweep range is empty")]
    EmptyRange,
}

impl Error {
    /// Stable machine-readable code, used by the CLI error envelope.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroVector => "zero_vector",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotHermitian(_) => "not_hermitian",
            Error::NotTraceZero(_) => "not_trace_zero",
            Error::NotPositive(_) => "not_positive",
            Error::NotMubTriple(_) => "not_mub_triple",
            Error::DegenerateEnsemble(_) => "degenerate_ensemble",
            Error::DegenerateGeneralizedEnsemble(_) => "degenerate_generalized_ensemble",
            Error::EigenbasisContainsPost => "eigenbasis_contains_post",
            Error::InvalidParameter { .. } => "invalid_parameter",
            Error::InsensitiveObservable(_) => "insensitive_observable",
            Error::NotInR(_) => "not_in_r",
            Error::InvalidTrials => "invalid_trials",
            Error::EmptyRange => "empty_range",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
