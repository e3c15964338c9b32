use thiserror::Error;

/// Errors raised by the library.
///
/// `Invariant` marks a broken internal identity (a bug, never bad input);
/// callers should surface it rather than retry.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {poly} is reducible over {field}")]
    ReducibleModulus { poly: String, field: String },

    #[error("modulus {poly} has degree {found}, expected {expected}")]
    ModulusDegree {
        poly: String,
        expected: usize,
        found: usize,
    },

    #[error("operands belong to different field contexts")]
    ContextMismatch,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("{what} needs quadratic-form dimension {needed}, above the ceiling {ceiling}")]
    Infeasible {
        what: String,
        needed: usize,
        ceiling: usize,
    },

    #[error("exhaustive enumeration over F_(2^{mn}) refused (bound is {bound})")]
    BruteBoundExceeded { mn: usize, bound: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! invariant {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::Invariant(format!($($arg)+)));
        }
    };
}

pub(crate) use invariant;
