use thiserror::Error;

use crate::perm::PermError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("subgroup is not contained in the ambient group")]
    NotSubgroup,
    #[error("group of order {order} exceeds the bound {limit} for {what}")]
    TooLarge { what: &'static str, order: u128, limit: u128 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;
