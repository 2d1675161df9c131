//! Planar tangles up to isotopy: construction, validation, canonical form,
//! substitution, reflection and loop removal.

mod canonical;
mod colour;
mod json;
mod ops;
#[allow(clippy::module_inception)]
mod tangle;

pub use canonical::CanonicalCode;
pub use colour::Colour;
pub use json::TangleJson;
pub use ops::Shade;
pub use tangle::{Corner, Endpoint, FreeLoop, PlanarTangle, Site, TangleBuilder};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TangleError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid tangle: {0}")]
    Invalid(String),
    #[error("star-region not white at box {0}")]
    StarNotWhite(usize),
    #[error("colour mismatch at box {index}: expected {expected}, found {found}")]
    ColourMismatch { index: usize, expected: Colour, found: Colour },
    #[error("box index {0} out of range")]
    BoxOutOfRange(usize),
    #[error("no free loop present")]
    NoLoop,
}
