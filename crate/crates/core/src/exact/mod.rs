//! Exact scalars over the modulus field and the dense linear algebra every
//! other module builds on. Nothing here rounds.

mod matrix;
mod poly;
mod scalar;

pub use matrix::{bilinear_radical, nullspace, rank, rref, solve, Echelon, Matrix};
pub use poly::Poly;
pub use scalar::{Scalar, ScalarField};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}
