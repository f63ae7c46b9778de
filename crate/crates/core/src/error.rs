use alloc::string::String;

/// Crate-wide error type. The variants map onto the CLI exit-code
/// taxonomy: `TooLarge` and `ThicknessTooLarge` are honest refusals,
/// everything else is an argument or input error.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// An exact search was asked to run past its size limit.
    #[error("instance too large: {0}")]
    TooLarge(String),
    /// No separation within the requested budget; carries the best size found.
    #[error("separator budget exceeded{context}: best size found {best}")]
    BudgetExceeded { best: usize, context: String },
    /// Enumerate-mode support grew past the configured budget.
    #[error("enumeration support budget exceeded ({limit} sets); use sample mode")]
    EnumerationBudget { limit: usize },
    /// Packing thickness rules out a sound answer for this operation.
    #[error("packing thickness too large: {0}")]
    ThicknessTooLarge(String),
    /// A randomized construction ran out of retries.
    #[error("rejection budget exhausted: {0}")]
    RejectionBudget(String),
}

pub type Result<T> = core::result::Result<T, Error>;
