use thiserror::Error;

use crate::geometry::RVec;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operands live over different wedges")]
    WedgeMismatch,

    #[error("operands live over different carriers")]
    CarrierMismatch,

    #[error("cone is not pointed: {witness} and its negation both lie in it")]
    NotPointed { witness: RVec },

    #[error("fuzzy elements with different p ({left} vs {right}) cannot be combined")]
    PMismatch { left: String, right: String },

    #[error("supremum {sup} drops below p = {p}")]
    SupBelowP { sup: String, p: String },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("{what} is {count}, above the cap {cap}")]
    CapExceeded { what: &'static str, count: u128, cap: u128 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
