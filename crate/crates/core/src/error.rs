use thiserror::Error;

/// Errors raised by family constructors, analyses and checkers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The ground set or an enumeration exceeds what this crate can represent.
    #[error("capacity exceeded: {what} is {value}, limit is {limit}")]
    Capacity {
        what: &'static str,
        value: u128,
        limit: u128,
    },

    /// An operation was called outside its parameter range.
    #[error("contract violation: {0}")]
    Contract(String),

    /// The input family lacks a property the operation depends on.
    #[error("domain error: {0}")]
    Domain(String),

    /// An internal consistency check failed.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! ensure_contract {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::Contract(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure_contract;
