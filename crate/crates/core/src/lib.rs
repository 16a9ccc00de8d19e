//! Exact perfect-matching sums of weighted plane graphs and checking of
//! graphical condensation identities.

pub mod aztec;
pub mod campaign;
pub mod condensation;
pub mod error;
pub mod generate;
pub mod graph;
pub mod matching;
pub mod weight;

pub use error::{Error, Result, SelectionError};
