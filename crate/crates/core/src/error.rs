use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid valuation profile: {0}")]
    InvalidProfile(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a three-eigenvalue matrix (minimal polynomial has degree {0})")]
    NotThreeEigenvalues(usize),

    #[error("non-integral spectrum: {0}")]
    NonIntegralSpectrum(String),

    #[error("minimal polynomial {0} has a repeated root")]
    RepeatedEigenvalue(String),

    #[error("enumeration budget exceeded: {needed} candidates requested, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
