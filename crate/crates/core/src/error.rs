use thiserror::Error;

/// Errors raised by matrix construction, validation and the inequality checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyMatrix { rows: usize, cols: usize },

    #[error("entries length {len} does not match shape {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize, len: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (asymmetry {asymmetry:e} exceeds {bound:e})")]
    NotHermitian { asymmetry: f64, bound: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e}, allowed {bound:e})")]
    NotPsd { min_eigenvalue: f64, bound: f64 },

    #[error("trace {trace} is not 1")]
    NotUnitTrace { trace: f64 },

    #[error("not a density matrix: {0}")]
    NotDensity(Box<Error>),

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("spectral function is undefined at eigenvalue {eigenvalue:e}")]
    Domain { eigenvalue: f64 },

    #[error("matrix dimension {dim} does not match factorization {expected}")]
    DimensionMismatch { dim: usize, expected: String },

    #[error("embedding of a {dim}x{dim} matrix at offset {offset} does not fit in {target}x{target}")]
    SpecTooSmall { dim: usize, offset: usize, target: usize },

    #[error("chain factorization keeps no factor")]
    EmptyKeep,

    #[error("chain factor index {index} out of range for {len} radices")]
    KeepOutOfRange { index: usize, len: usize },

    #[error("trace {trace:e} is not positive")]
    ZeroTrace { trace: f64 },

    #[error("shift {shift} leaves minimum eigenvalue {min_eigenvalue:e} negative")]
    ShiftTooSmall { shift: f64, min_eigenvalue: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
