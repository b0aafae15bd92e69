//! Crate-wide error type; the CLI maps variants onto its exit-code contract.

use crate::parse::ParseError;
use crate::poly::PolyError;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("a local ordering is not valid here; use the local algebra routines")]
    LocalOrdering,

    #[error("the mapping is not finite at 0")]
    NotFinite,

    #[error("polynomial is not regular in t: P(0,t) = 0 identically")]
    NotRegular,

    #[error("hypothesis check failed: {0}")]
    HypothesisFailed(String),

    #[error(
        "eliminated part is not principal ({0} elements); this violates a structural \
         invariant of the elimination and should be reported as a bug"
    )]
    NotPrincipal(usize),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
