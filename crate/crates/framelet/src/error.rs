use thiserror::Error;

/// Errors produced by bank construction, verification and transforms.
#[derive(Debug, Error)]
pub enum FrameletError {
    /// Input shapes or lengths do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A request violates a documented precondition.
    #[error("invalid design: {0}")]
    InvalidDesign(String),

    /// A low-pass mask fails admissibility (positive coefficients, sum one,
    /// vanishing at the nonzero half-integer shifts).
    #[error("inadmissible low-pass filter: {0}")]
    InadmissibleLowpass(String),

    /// A direction has tied dot products with the grid offsets.
    #[error("inadmissible direction: offsets {0:?} and {1:?} have equal dot products")]
    InadmissibleDirection(Vec<i64>, Vec<i64>),

    /// The direction generator ran out of candidates.
    #[error("no admissible direction found after {0} candidates")]
    DirectionSearchExhausted(usize),

    /// A matrix was too ill-conditioned to invert reliably.
    #[error("numerically singular system (condition estimate {0:.3e})")]
    IllConditioned(f64),

    /// Spectral precondition violated: the design must be rescaled first.
    #[error("design is infeasible: largest singular value {0} exceeds 1")]
    SpectralExcess(f64),

    /// The stacked rows fail to form a Parseval frame within tolerance.
    #[error("not a Parseval frame: |c^T c + D^T D - I| = {0:.3e}")]
    NotParseval(f64),

    /// Q lost full column rank; the truncation error constant is undefined.
    #[error("rank-deficient design: smallest singular value {0:.3e}")]
    RankDeficient(f64),

    /// Generic numerical failure (reported with the failing check).
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// A persisted file does not parse or fails its self-check.
    #[error("malformed file: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, FrameletError>;
