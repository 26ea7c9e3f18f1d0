use thiserror::Error;

/// Errors raised by the library. Every variant names the condition that failed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid field parameter d={d}: {reason}")]
    InvalidField { d: i64, reason: &'static str },

    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    #[error("Q(sqrt({0})) is not a class-number-one field")]
    NotClassNumberOne(i64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("cost guard: {0}")]
    CostGuard(String),

    #[error("did not converge: {0}")]
    NonConvergence(String),

    #[error("modulus norm {0} exceeds the machine-integer sieve kernel")]
    ModulusTooLarge(String),

    #[error("no Dirichlet certificate found for z={z} with N={n}")]
    NoCertificate { z: String, n: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

#[allow(dead_code)]
pub(crate) fn precondition<S: Into<String>>(cond: bool, msg: S) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(msg.into()))
    }
}
