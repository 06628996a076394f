//! Error type shared by all modules.

use std::fmt;

/// Error type for matrix construction and spectral operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Matrix must be square.
    NotSquare { rows: usize, cols: usize },
    /// Dimensions do not match for the operation.
    DimensionMismatch { expected: usize, got: usize },
    /// Input is not Hermitian within tolerance.
    NotHermitian { asymmetry: f64, tolerance: f64 },
    /// Input is not positive semidefinite within tolerance.
    NotPositiveSemidefinite { min_eigenvalue: f64, tolerance: f64 },
    /// Operation requires a positive definite matrix.
    Singular { min_eigenvalue: f64 },
    /// Exponent outside the admissible range for this operation.
    InvalidExponent(String),
    /// Basis matrix is not orthonormal within tolerance.
    NotOrthonormal { deviation: f64 },
    /// Unit-vector precondition violated.
    InvalidVector(String),
    /// Graph specification is malformed.
    InvalidGraph(String),
    /// Counterexample parameters outside their admissible range.
    InvalidParams(String),
    /// Bisection endpoints do not bracket a sign change.
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    /// Generic eigensolver cannot resolve this eigenvalue regime; use the
    /// factored path instead.
    PrecisionRegime(String),
    /// Hölder exponents do not satisfy the conjugacy constraint.
    ExponentSum { sum: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix must be square, got {rows}x{cols}")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NotHermitian { asymmetry, tolerance } => {
                write!(f, "matrix is not Hermitian: asymmetry {asymmetry:.3e} exceeds {tolerance:.3e}")
            }
            Error::NotPositiveSemidefinite { min_eigenvalue, tolerance } => {
                write!(f, "matrix is not PSD: min eigenvalue {min_eigenvalue:.3e} below -{tolerance:.3e}")
            }
            Error::Singular { min_eigenvalue } => {
                write!(f, "matrix is singular or indefinite (min eigenvalue {min_eigenvalue:.3e})")
            }
            Error::InvalidExponent(msg) => write!(f, "invalid exponent: {msg}"),
            Error::NotOrthonormal { deviation } => {
                write!(f, "basis is not orthonormal: ||B*B - I|| = {deviation:.3e}")
            }
            Error::InvalidVector(msg) => write!(f, "invalid vector: {msg}"),
            Error::InvalidGraph(msg) => write!(f, "invalid graph: {msg}"),
            Error::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            Error::NoSignChange { lo, hi, f_lo, f_hi } => {
                write!(f, "no sign change on [{lo}, {hi}]: f(lo) = {f_lo:.6e}, f(hi) = {f_hi:.6e}")
            }
            Error::PrecisionRegime(msg) => write!(f, "precision regime error: {msg}"),
            Error::ExponentSum { sum } => {
                write!(f, "Hoelder exponents must satisfy sum of reciprocals = 1, got {sum}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
