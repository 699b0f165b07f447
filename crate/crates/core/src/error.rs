use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The eigensolver hit its sweep cap.
    NumericFailure { dim: usize },
    /// An operator required to be positive semidefinite has a significantly
    /// negative eigenvalue.
    NotPsd { min_eigenvalue: f64 },
    NotSymmetric { row: usize, col: usize },
    /// Zero vector, zero trace, or an empty input list.
    Degenerate(&'static str),
    Shape(String),
    InvalidArgument(String),
    Parse { pos: usize, msg: String },
    /// A basis label or space name that is not registered.
    Registry(String),
    /// A word that is not in the lexicon.
    Lookup(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NumericFailure { dim } => {
                write!(f, "eigensolver did not converge on a {dim}x{dim} matrix")
            }
            Error::NotPsd { min_eigenvalue } => write!(
                f,
                "operator is not positive semidefinite (eigenvalue {min_eigenvalue:e})"
            ),
            Error::NotSymmetric { row, col } => {
                write!(f, "matrix is not symmetric at ({row}, {col})")
            }
            Error::Degenerate(what) => write!(f, "degenerate input: {what}"),
            Error::Shape(msg) => write!(f, "shape mismatch: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::Parse { pos, msg } => write!(f, "parse error at position {pos}: {msg}"),
            Error::Registry(msg) => write!(f, "registry error: {msg}"),
            Error::Lookup(word) => write!(f, "unknown word `{word}`"),
        }
    }
}

impl core::error::Error for Error {}
