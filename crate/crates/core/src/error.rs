use thiserror::Error;

use crate::arith::{ArithError, ParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("parametrization is degenerate: the image is a curve or a point")]
    DegenerateSurface,
    #[error("no regular base point found after 16 reparametrizations")]
    RetriesExhausted,
    #[error("input is a plane")]
    PlaneInput,
    #[error("elimination degenerate: every equation pair has a zero resultant")]
    EliminationDegenerate,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("more than one central symmetry found; preconditions are violated")]
    CentralNotUnique,
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
