//! Minimum-distance bounds and Reed-Solomon subcode constructions for linear
//! codes whose coded symbols may depend only on prescribed message symbols.

pub mod bounds;
pub mod cli;
pub mod construct;
pub mod error;
pub mod example;
pub mod field;
pub mod graph;
pub mod matrix;
pub mod poly;
pub mod rs;
pub mod verify;

pub use error::{Error, Result};
