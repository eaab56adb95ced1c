//! File formats, parallel drivers and experiments on top of `postman-core`.

pub mod cli;
pub mod embedding_io;
pub mod error;
pub mod experiments;
pub mod graph_io;
pub mod json;
pub mod parallel;
pub mod qubo_io;
pub mod reports;
pub mod samples_io;

pub use error::{Error, Result};
pub use postman_core as core;
