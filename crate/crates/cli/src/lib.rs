//! Input parsing and report rendering for the `surfsym` binary.

pub mod input;
pub mod render;

pub use input::{parse_input, InputError, InputSpec};
