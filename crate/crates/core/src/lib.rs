//! Local weak convergence of graphs versus edge-labelled diagrams: limit
//! balls, finite constructions, ball censuses and the obstruction checks.

pub mod cayley;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod format;
pub mod graph;
pub mod limits;
pub mod obstruction;
pub mod rng;

pub use error::{GlimError, Result};
