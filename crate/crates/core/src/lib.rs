pub mod cli;
pub mod constructions;
pub mod engine;
pub mod error;
pub mod fields;
pub mod graphs;
pub mod hardness;
pub mod linalg;

pub use error::{Error, Result};
