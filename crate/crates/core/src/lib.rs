pub mod cli;
pub mod constants;
pub mod constructions;
pub mod decimal;
pub mod error;
pub mod gaussian;
pub mod polyalg;
pub mod scalar;
pub mod verify;
pub mod weil;

pub use error::{Error, Result};
pub use scalar::{ExactScalar, GaussRat, HalfInt};
