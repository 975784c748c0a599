//! Library side of the `bipeel` command: configuration, the run pipeline
//! and the dataset cache. The binary is a thin clap front end over these.

pub mod config;
pub mod error;
pub mod fetch;
pub mod run;

pub use config::{Algorithm, RunConfig, SideArg};
pub use error::CliError;
pub use run::{run, RunSummary};
