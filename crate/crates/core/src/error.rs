//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Partition parts must be weakly decreasing.
    #[error("partition parts are not weakly decreasing: {0:?}")]
    NonMonotone(Vec<i64>),

    /// Partition parts must be non-negative.
    #[error("partition parts must be non-negative: {0:?}")]
    Negative(Vec<i64>),

    /// A windowed series operation could not guarantee exactness of every
    /// requested coefficient.
    #[error("insufficient window: {0}")]
    InsufficientWindow(String),

    /// An operation that acts charge-wise received a mixed-charge vector.
    #[error("mixed-charge input: {0}")]
    ChargeMixed(String),

    /// A box-basis shape does not fit in the r x (n-r) box.
    #[error("shape out of box: {0}")]
    ShapeOutOfBox(String),

    /// Matrix or module dimensions do not match.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An operator expression or a JSON payload failed to parse.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
