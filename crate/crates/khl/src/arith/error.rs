use thiserror::Error;

/// Errors raised by the arithmetic layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    /// A field operation (inverse, kernel, rank) was requested over a ring
    /// that is not a field.
    #[error("coefficient ring {0} is not a field")]
    NonFieldRing(String),
    /// A graded matrix entry is not homogeneous of the degree forced by the
    /// generator degrees of its row and column.
    #[error("entry ({row},{col}) is not homogeneous of the forced degree")]
    NonHomogeneousEntry { row: usize, col: usize },
    /// A graded operation was requested over an ungraded ring.
    #[error("operation requires a graded polynomial ring, got {0}")]
    NotGraded(String),
    /// Division was requested by a non-invertible or non-dividing element.
    #[error("element {0} is not invertible / does not divide exactly")]
    NotInvertible(String),
    /// An element string could not be parsed in the given ring.
    #[error("cannot parse {text:?} as an element of {ring}")]
    Parse { text: String, ring: String },
}
