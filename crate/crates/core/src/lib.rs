pub mod cli;
pub mod error;
pub mod exactmath;
pub mod geometry;
pub mod invariants;
pub mod operator_algebra;
pub mod stringy;
pub mod verify;

pub use error::{Error, Result};
pub use exactmath::Rational;
