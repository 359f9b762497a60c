use thiserror::Error;

use crate::relation::Relation;

/// Errors raised by the algebra, clone and decision machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown operation `{0}`")]
    UnknownOperation(String),
    #[error("operation `{op}` expects {expected} arguments, got {got}")]
    ArityMismatch {
        op: String,
        expected: usize,
        got: usize,
    },
    #[error("element {value} is outside the universe 0..{size}")]
    OutOfRange { value: usize, size: usize },
    #[error("resource bound exceeded: {0}")]
    ResourceBoundExceeded(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("extension is not well defined: {0}")]
    WellDefinednessFailure(Box<WellDefinednessFailure>),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("sources of the monounary algebra do not share a common height")]
    ConditionVNotSatisfied,
    #[error("not a semilattice")]
    NotASemilattice,
    #[error("not a lattice")]
    NotALattice,
    #[error("not an abelian group")]
    NotAbelianGroup,
    #[error("not a monounary algebra")]
    NotMonounary,
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid algebra: {0}")]
    Validation(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Two term representations of the same point that receive different
/// values under the candidate extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WellDefinednessFailure {
    /// The point of the power where the conflict shows up.
    pub point: Vec<usize>,
    pub first_term: String,
    pub second_term: String,
    /// `Sol(first_term, second_term)` over the generators; absent when the
    /// power is too large to tabulate.
    pub violated: Option<Relation>,
}

impl std::fmt::Display for WellDefinednessFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} and {} both produce {:?} but disagree on its image",
            self.first_term, self.second_term, self.point
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn bound_exceeded(what: impl Into<String>) -> Error {
    Error::ResourceBoundExceeded(what.into())
}
