//! Temperley-Lieb diagrams, their algebra and trace, and the concrete
//! planar algebras (quotients by the trace radical) used for evaluation.

mod diagram;
mod element;
mod instance;
mod labelled;

pub use diagram::{tl_basis, TLDiagram};
pub use element::{evaluate, evaluate_in, substitute, TLElement};
pub use instance::{gram_matrix, ColourData, ConcreteInstance, Model};
pub use labelled::{FormalSum, Label, LabelledTangle};

use thiserror::Error;

use crate::tangle::Colour;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TlError {
    #[error("tangle has {expected} boxes but {found} inputs were given")]
    Arity { expected: usize, found: usize },
    #[error("colour mismatch: expected {expected}, found {found}")]
    ColourMismatch { expected: Colour, found: Colour },
    #[error("{0}")]
    Range(String),
    #[error("no shipped instance for m = {0} (supported: 3, 4, 5, 6)")]
    UnsupportedModel(u32),
    #[error("colour {0} is not built in this instance")]
    ColourUnavailable(Colour),
    #[error("trace form is degenerate on the chosen basis at colour {0}")]
    Degenerate(Colour),
    #[error("trace form is not positive at colour {0}")]
    NotPositive(Colour),
    #[error("box {0} is unlabelled")]
    Unlabelled(usize),
}

/// `E_n` and `e_n = delta^{-1} E_n` at colour `n`.
pub fn jones_projection(field: crate::exact::ScalarField, n: u32) -> Result<(TLElement, TLElement), TlError> {
    if n < 2 {
        return Err(TlError::Range(format!("Jones projection needs n >= 2, got {n}")));
    }
    let big = TLElement::jones_e(field, n, n as usize - 1)?;
    let small = big.scale(&field.delta_pow(-1));
    Ok((big, small))
}
