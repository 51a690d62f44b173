use std::fmt;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Variance of an empty vector is undefined.
    EmptyVector,
    /// Prefix length outside 1..=len.
    OutOfRange { k: usize, len: usize },
    /// Jacobi iteration exhausted its sweep budget without meeting tolerance.
    NonConvergence { sweeps: usize },
    /// Paired vectors have different lengths.
    LengthMismatch { left: usize, right: usize },
    /// Variance majorization needs at least two entries.
    LengthTooSmall { len: usize },
    /// Matrix dimension below the minimum for the operation.
    DimensionTooSmall { n: usize },
    /// A diagonal entry is not exactly 1.
    NotUnitDiagonal { index: usize, value: f64 },
    /// An off-diagonal entry lies outside [-1, 1].
    OffDiagonalOutOfRange { row: usize, col: usize, value: f64 },
    /// Smallest eigenvalue below the PSD tolerance.
    NotPositiveSemidefinite { min_eigenvalue: f64 },
    /// Power-mean exponent must exceed 1.
    InvalidExponent { p: f64 },
    /// A numerically guaranteed inequality failed beyond tolerance; indicates a bug.
    InternalInconsistency { detail: String },
    /// Row sampling kept producing near-zero vectors.
    DegenerateRow { attempts: usize },
    /// Malformed matrix file.
    Parse { line: usize, message: String },
    /// Matrix file entries differ from their transpose beyond tolerance.
    Asymmetric { row: usize, col: usize, delta: f64 },
    /// Invalid search configuration.
    InvalidConfig { message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyVector => write!(f, "variance of an empty vector is undefined"),
            Error::OutOfRange { k, len } => {
                write!(
                    f,
                    "prefix length {k} out of range for vector of length {len}"
                )
            }
            Error::NonConvergence { sweeps } => {
                write!(f, "eigensolver did not converge within {sweeps} sweeps")
            }
            Error::LengthMismatch { left, right } => {
                write!(f, "vector lengths differ: {left} vs {right}")
            }
            Error::LengthTooSmall { len } => {
                write!(f, "need at least 2 entries, got {len}")
            }
            Error::DimensionTooSmall { n } => {
                write!(f, "matrix dimension {n} is too small for this operation")
            }
            Error::NotUnitDiagonal { index, value } => {
                write!(
                    f,
                    "diagonal entry [{index}][{index}] is {value}, expected exactly 1"
                )
            }
            Error::OffDiagonalOutOfRange { row, col, value } => {
                write!(
                    f,
                    "off-diagonal entry [{row}][{col}] = {value} outside [-1, 1]"
                )
            }
            Error::NotPositiveSemidefinite { min_eigenvalue } => {
                write!(
                    f,
                    "matrix is not positive semidefinite: min eigenvalue {min_eigenvalue}"
                )
            }
            Error::InvalidExponent { p } => {
                write!(f, "power-mean exponent must be > 1, got {p}")
            }
            Error::InternalInconsistency { detail } => {
                write!(f, "internal inconsistency: {detail}")
            }
            Error::DegenerateRow { attempts } => {
                write!(f, "random row had near-zero norm after {attempts} attempts")
            }
            Error::Parse { line, message } => {
                write!(f, "parse error at line {line}: {message}")
            }
            Error::Asymmetric { row, col, delta } => {
                write!(
                    f,
                    "entries [{row}][{col}] and [{col}][{row}] differ by {delta:e}, beyond 1e-9"
                )
            }
            Error::InvalidConfig { message } => write!(f, "invalid configuration: {message}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
