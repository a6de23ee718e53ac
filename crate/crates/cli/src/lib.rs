//! Command-line front end for `tsclust`: CSV ingestion, run configuration
//! and the `dist`, `cluster`, `benchmark` and `pairstage` commands.

pub mod app;
pub mod commands;
pub mod config;
pub mod corpus;
pub mod error;

pub use app::{run, Cli};
pub use config::RunConfig;
pub use error::{CliError, Result};
