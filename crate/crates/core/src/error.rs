use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("working precision must be at least 1")]
    ZeroPrecision,

    #[error("operands live in different p-adic contexts")]
    ContextMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("exponential series diverges: valuation {valuation} is too small for p = {p}")]
    ExpDomain { p: u64, valuation: i64 },

    #[error("argument outside the admissible domain: {0}")]
    OutsideDomain(String),

    #[error("absolute precision {requested} cannot be reached (only {available} available)")]
    PrecisionUnreachable { requested: i64, available: i64 },

    #[error("known order underflow: result order {order} < 0")]
    OrderUnderflow { order: i64 },

    #[error("series known to order {have}, need at least {need}")]
    InsufficientOrder { have: i64, need: i64 },

    #[error("construction step {step} inapplicable: B'(x) vanishes identically")]
    ConstantB { step: usize },

    #[error("right-hand side must be a constant for this construction")]
    NonConstantRhs,

    #[error("equation is not homogeneous")]
    NotHomogeneous,

    #[error("degenerate construction: {0}")]
    Degenerate(String),

    #[error("invalid Lagrangian: {0}")]
    InvalidLagrangian(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("derived identity failed its oracle check: {0}")]
    Derivation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
