use thiserror::Error;

/// Errors raised by the surreal-core operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("EmptyInterval: lower bound {lower} is not below upper bound {upper}")]
    EmptyInterval { lower: String, upper: String },
    #[error("DivByZero")]
    DivByZero,
    #[error("NotANumber: form {0} violates L << R")]
    NotANumber(String),
    #[error("NotDyadic: {0} has a denominator that is not a power of two")]
    NotDyadic(String),
    #[error("DayTooLarge: day {requested} exceeds the enumeration cap {cap}")]
    DayTooLarge { requested: usize, cap: usize },
    #[error("NotBornWithinCap: form is not in any day up to {cap}")]
    NotBornWithinCap { cap: usize },
    #[error("NotCompatible: {0}")]
    NotCompatible(String),
    #[error("NotPositive: {0} is not positive")]
    NotPositive(String),
    #[error("SeedNotRational: sqrt({0}) is irrational")]
    SeedNotRational(String),
    #[error("NegativeOperand: {0} is negative")]
    NegativeOperand(String),
    #[error("ZeroOperand")]
    ZeroOperand,
    #[error("NotMonomial: {0} has more than one term")]
    NotMonomial(String),
    #[error("BudgetTooLarge: {what} = {requested} exceeds {max}")]
    BudgetTooLarge {
        what: &'static str,
        requested: usize,
        max: usize,
    },
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
