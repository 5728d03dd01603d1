use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("budget exceeded: {what} needs {needed} > {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },
    #[error("invalid ring spec: {0}")]
    InvalidSpec(String),
    #[error("index error: ({i}, {j}) in degree {n}")]
    Index { i: usize, j: usize, n: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("closure incomplete: {0}")]
    Incomplete(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("mismatched operands: {0}")]
    Mismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn budget(what: &'static str, needed: impl Into<u128>, budget: impl Into<u128>) -> Error {
    Error::BudgetExceeded {
        what,
        needed: needed.into(),
        budget: budget.into(),
    }
}
