use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two operands disagree on a dimension.
    DimensionMismatch { expected: usize, found: usize },
    /// An operation that needs at least one item got none.
    EmptyInput,
    /// Zero vector or rank-0 projection where a nonzero one is required.
    ZeroInput,
    /// Entries contained NaN or infinity.
    NonFinite,
    /// Arguments out of the documented range.
    InvalidArgument(String),
    /// A mathematical hypothesis of a construction does not hold.
    Precondition(String),
    /// A projection is not in the algebra it must belong to.
    NotInAlgebra { residual: f64 },
    /// A randomized search used its whole budget.
    SearchExhausted { what: &'static str, trace: Vec<String> },
    /// The verdict depends on which rank tolerance is used.
    ToleranceAmbiguous { what: &'static str, trace: Vec<String> },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Search trace attached to the error, if any.
    pub fn trace(&self) -> &[String] {
        match self {
            Error::SearchExhausted { trace, .. } | Error::ToleranceAmbiguous { trace, .. } => trace,
            _ => &[],
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::EmptyInput => f.write_str("empty input"),
            Error::ZeroInput => f.write_str("input is zero"),
            Error::NonFinite => f.write_str("non-finite entry"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::NotInAlgebra { residual } => {
                write!(f, "projection does not lie in the algebra (residual {residual:.3e})")
            }
            Error::SearchExhausted { what, trace } => {
                write!(f, "{what}: search budget exhausted after {} trace steps", trace.len())
            }
            Error::ToleranceAmbiguous { what, .. } => {
                write!(f, "{what}: verdict differs between search and certification tolerance")
            }
        }
    }
}

impl core::error::Error for Error {}
