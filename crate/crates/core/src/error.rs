use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("non-finite value at index {0}")]
    NonFinite(usize),

    #[error("operator is not square: {entries} entries for dim {dim}")]
    NotSquare { dim: usize, entries: usize },

    #[error("operator is not Hermitian: entries ({row},{col}) and ({col},{row}) differ by {deviation:e}")]
    NotHermitian { row: usize, col: usize, deviation: f64 },

    #[error("state is not normalized: norm {0}")]
    NotNormalized(f64),

    #[error("null second vector")]
    NullSecondVector,

    #[error("second vector spanned by m")]
    SpannedByM,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid too small: {0}")]
    GridTooSmall(String),

    #[error("grid mismatch between wave functions")]
    GridMismatch,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("boundary decay violated: edge magnitude {0:e}")]
    BoundaryDecay(f64),

    #[error("singular width combination: beta = {0}")]
    SingularWidth(num_complex::Complex64),

    #[error("degenerate width denominator: |abar^2| = {0:e}")]
    DegenerateWidthDenominator(f64),

    #[error("no self-consistent solution: {0}")]
    NoSolution(String),
}

pub type Result<T> = std::result::Result<T, Error>;
