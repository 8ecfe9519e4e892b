use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Which homomorphism law a candidate table violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomLaw {
    Unital,
    Additive,
    Multiplicative,
}

impl fmt::Display for HomLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomLaw::Unital => write!(f, "unitality"),
            HomLaw::Additive => write!(f, "additivity"),
            HomLaw::Multiplicative => write!(f, "multiplicativity"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring order {0}: modulus must be at least 2")]
    InvalidOrder(u64),
    #[error("ring of order {order} exceeds the configured cap {cap}")]
    Capacity { order: usize, cap: usize },
    #[error("unsupported modulus: {0}")]
    UnsupportedModulus(String),
    #[error("quotient by the whole ring is the zero ring")]
    DegenerateQuotient,
    #[error("table is not a ring homomorphism: {law} fails at ({x}, {y})")]
    HomViolation { law: HomLaw, x: usize, y: usize },
    #[error("the unit ideal has no prime ideals over it")]
    NoPrimes,
    #[error("ideal meets the multiplicative set at element {0}")]
    NotDisjoint(usize),
    #[error("multiplicative set contains zero, so the localization is the zero ring")]
    LocalizationIsZero,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("{0}")]
    Parse(#[from] crate::dsl::ParseError),
    #[error("semantic error: {0}")]
    Semantic(String),
    #[error("time cap exceeded")]
    Timeout,
}
