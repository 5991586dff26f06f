//! Exact detection of involutive symmetries of polynomially parametrized
//! surfaces.

pub mod arith;
pub mod candidates;
pub mod classifier;
pub mod error;
pub mod solver;
pub mod surface;
pub mod systems;

pub use error::{Error, Result};
