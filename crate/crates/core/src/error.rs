use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },

    #[error("unsupported variable count {0} (must be between 1 and {max})", max = crate::f2poly::MAX_VARS)]
    VariableCount(usize),

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("not divisible: remainder blocked at leading term {0}")]
    NotDivisible(String),

    #[error("not in the Dickson algebra: leading term {0} is not a product of generator leading terms")]
    NotInAlgebra(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("enumeration budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
