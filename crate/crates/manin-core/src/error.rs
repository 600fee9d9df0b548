//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MathError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid root system: {0}")]
    InvalidRootSystem(String),
    #[error("root not in the root system")]
    RootNotInSystem,
    #[error("algebra mismatch between operands")]
    AlgebraMismatch,
    #[error("map is not involutive")]
    NotInvolutive,
    #[error("subspace is already real-restricted")]
    AlreadyReal,
    #[error("subspace is not contained: {0}")]
    NotContained(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("condition iv) violated: {0}")]
    ConditionIv(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
