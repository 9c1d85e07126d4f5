use thiserror::Error;

use crate::chain::ChainReport;
use crate::collineation::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("identically zero family")]
    ZeroFamily,
    #[error("minor of size {size} is identically zero (generic rank {rank})")]
    MinorIdenticallyZero { size: usize, rank: usize },
    #[error("family degenerates identically: generic rank {rank}, expected {expected}")]
    Degenerate { rank: usize, expected: usize },
    #[error("flavor mismatch: {0}")]
    FlavorMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("invalid complete collineation: {} violation(s)", .0.violations.len())]
    InvalidCollineation(Box<ValidationReport>),
    #[error("invalid nodal chain: {} violation(s)", .0.violations.len())]
    InvalidChain(Box<ChainReport>),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}
