pub mod cornet;
pub mod embed;
pub mod error;
pub mod fuzzy;
pub mod geometry;
pub mod sample;
pub mod sets;
pub mod wedge;

pub use error::{Error, Result};
