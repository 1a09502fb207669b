use thiserror::Error;

/// Errors raised by the exact engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected a real element, got {0}")]
    NotReal(String),
    #[error("cannot parse scalar {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("form degree {0} out of range")]
    DegreeOverflow(usize),
    #[error("interior product of a degree-0 form")]
    DegreeZero,
    #[error("product of two lambda-linear coefficients is quadratic in lambda")]
    QuadraticLambda,
    #[error("matrix is singular")]
    Singular,
    #[error("{0} does not lie in the span of the basis")]
    NotInSpan(String),
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("parameter {index} must be strictly positive, got {value}")]
    NonPositive { index: usize, value: String },
    #[error("parameters outside the SKT region: {0}")]
    OutsideRegion(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
