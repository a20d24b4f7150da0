use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown root system label `{0}`")]
    BadLabel(String),
    #[error("unsupported type {0}: {1}")]
    Unsupported(String, &'static str),
    #[error("subset is not a closed root subsystem: {0}")]
    NotClosed(String),
    #[error("enumeration cap {cap} exceeded (needed {needed})")]
    CapExceeded { cap: u64, needed: u64 },
    #[error("word is not reduced: {0:?}")]
    NotReduced(Vec<usize>),
    #[error("index {0} out of range")]
    OutOfRange(usize),
    #[error("matrix is not an automorphism of the root system")]
    NotAutomorphism,
    #[error("element does not normalize the torus")]
    NotNormalizing,
    #[error("maps do not commute with the twist")]
    NotCommuting,
    #[error("invalid twist: {0}")]
    BadTwist(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("lemma violated: {0}")]
    LemmaViolation(String),
    #[error("inexact division in {0}")]
    Inexact(&'static str),
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error("parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
