//! Exact arithmetic kernel.

pub mod gcd;
pub mod interval;
pub mod mpoly;
pub mod parse;
pub mod rat;
pub mod ratfn;
pub mod resultant;
pub mod roots;
pub mod upoly;

use thiserror::Error;

pub use gcd::{gcd, squarefree_part};
pub use interval::{eval_mpoly, RatInterval};
pub use mpoly::{vars, Exponents, MPoly, Vars};
pub use parse::ParseError;
pub use rat::Rat;
pub use ratfn::RatFn;
pub use resultant::resultant;
pub use roots::{isolate_real_roots, RootInterval};
pub use upoly::UPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomial has degree 0 in `{0}`")]
    ZeroDegree(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not univariate")]
    NotUnivariate,
    #[error("inexact division")]
    InexactDivision,
    #[error("division by zero")]
    DivisionByZero,
    #[error("no substitution given for `{0}`")]
    MissingSubstitution(String),
    #[error("requested width must be positive for an irrational root")]
    ZeroWidthRequest,
}
