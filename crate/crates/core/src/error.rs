use thiserror::Error;

/// Errors produced by the geometry kernels and the verification lab.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("invalid net: {0}")]
    InvalidNet(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("hyperboloid model violation: {0}")]
    Model(String),

    #[error("oracle budget exceeded: {0}")]
    OracleBudget(String),

    #[error("sampling budget exhausted: {0}")]
    SamplingBudget(String),

    #[error("inconsistent result: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}
