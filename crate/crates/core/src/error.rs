use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max |a - a^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("coefficient {index} has imaginary part {imag:e} above tolerance")]
    NonRealCoefficient { index: usize, imag: f64 },

    #[error("not a density operator: {0}")]
    NotDensity(String),

    #[error("Kraus operators are incomplete (max |sum A^dagger A - I| = {residual:e})")]
    IncompleteKraus { residual: f64 },

    #[error("Kraus operators have differing shapes")]
    ShapeMismatch,

    #[error("matrix is not unitary (max |U^dagger U - I| = {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("side {0} is not a power of two")]
    NotQubitDimension(usize),

    #[error("value {value} is outside {range}")]
    OutOfRange { value: f64, range: &'static str },

    #[error("non-finite value in matrix data")]
    NonFinite,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
