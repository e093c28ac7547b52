//! File formats, command line front end and parallel sweeps for `waring-core`.
//!
//! Exit codes of the `waring-lab` binary: 0 success, 1 verification failure,
//! 2 input error, 3 numerical indeterminacy.

pub mod cli;
pub mod commands;
mod error;
pub mod inline;
pub mod input;
pub mod schema;

pub use error::{LabError, LabResult};
