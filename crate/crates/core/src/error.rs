use thiserror::Error;

use crate::ring::Ring;

/// Position-annotated syntax error from the polynomial, braid or matrix grammars.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("negative exponent in an ordinary (non-Laurent) polynomial ring")]
    NegativeExponent,
    #[error("non-integer coefficient in a polynomial ring over Z")]
    NonIntegerCoefficient,
    #[error("exponent vector has {found} entries but the ring has {expected} variables")]
    Arity { expected: usize, found: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("input is a unit: {0}")]
    UnitInput(String),
    #[error("substitution exponent for x{0} is zero")]
    ZeroSubstitution(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("generator is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("constant input")]
    ConstantInput,
    #[error("resource budget exceeded: {0}")]
    ResourceExhausted(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
