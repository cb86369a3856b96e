use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("capacity exceeded: {what} has size {size}, limit is {limit}")]
    Capacity { what: String, size: String, limit: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid coefficient ring: {0}")]
    InvalidRing(String),

    #[error("element is not a unit")]
    NotAUnit,

    #[error("operands live in different carriers: {0}")]
    MismatchedCarriers(String),

    #[error("element does not lie in the (1-s)/2 component")]
    NotInFComponent,

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("enumeration budget exceeded: cardinality {cardinality} > budget {budget}")]
    Budget { cardinality: String, budget: String },

    #[error("characteristic {characteristic} divides {modulus}")]
    CharDivides { characteristic: u64, modulus: u64 },

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("theory and brute force disagree: {0}")]
    Discrepancy(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

impl Error {
    pub(crate) fn budget(cardinality: impl ToString, budget: impl ToString) -> Self {
        Error::Budget { cardinality: cardinality.to_string(), budget: budget.to_string() }
    }

    pub(crate) fn capacity(what: &str, size: impl ToString, limit: impl ToString) -> Self {
        Error::Capacity { what: what.to_string(), size: size.to_string(), limit: limit.to_string() }
    }
}
