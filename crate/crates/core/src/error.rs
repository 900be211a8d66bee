use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("divergent integrand: growth rate {growth} is not below alpha = {alpha}")]
    Divergent { growth: f64, alpha: f64 },

    #[error("symbol is not holomorphic: term with z-bar exponents {0:?}")]
    NotHolomorphic(Vec<u32>),

    #[error("state has negligible norm on the grid ({0:e})")]
    ZeroNorm(f64),

    #[error("{0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }
}
