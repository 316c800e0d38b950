//! Scans, file formats and the `ffgraph` command line on top of
//! [`ffgraph_core`].

pub mod cli;
pub mod error;
pub mod format;
pub mod scan;
pub mod suite;

pub use error::{AppError, AppResult};
pub use ffgraph_core as core;
