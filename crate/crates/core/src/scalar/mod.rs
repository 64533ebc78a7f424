//! Exact coefficient arithmetic: multivariate polynomials over the Gaussian
//! rationals ℚ(i), with formal differentiation, conjugation and parsing.

use alloc::string::String;
use core::fmt;

mod gauss;
mod parse;
mod patch;
mod poly;

pub use gauss::GaussRational;
pub use parse::parse_poly;
pub use patch::Patch;
pub use poly::{Monomial, Poly, PolyDisplay};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarError {
    /// Operands live on patches of different dimension.
    PatchMismatch { left: usize, right: usize },
    IndexOutOfRange { index: usize, dim: usize },
    Parse { pos: usize, msg: String },
    UnknownName { name: String, pos: usize },
    InvalidPatch(String),
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::PatchMismatch { left, right } => {
                write!(f, "patch mismatch: dimension {left} vs {right}")
            }
            ScalarError::IndexOutOfRange { index, dim } => {
                write!(f, "coordinate index {index} out of range for dimension {dim}")
            }
            ScalarError::Parse { pos, msg } => write!(f, "syntax error at {pos}: {msg}"),
            ScalarError::UnknownName { name, pos } => write!(f, "unknown coordinate `{name}` at {pos}"),
            ScalarError::InvalidPatch(msg) => write!(f, "invalid patch: {msg}"),
        }
    }
}

impl core::error::Error for ScalarError {}
