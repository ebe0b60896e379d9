//! Config-driven experiment runner on top of `pqc-regress`.
//!
//! A run is described by one TOML file (see the README for the schema).
//! Every command validates the whole config before reading data, writes its
//! outputs atomically, and maps failures to exit code 2 (configuration) or
//! 3 (computation).

pub mod commands;
pub mod config;
pub mod error;
pub mod manifest;

pub use commands::{cmd_describe, cmd_grid, cmd_learning_curve, cmd_synth, cmd_train};
pub use config::{default_iterations, Overrides, Resolved, RunConfig};
pub use error::{CliError, EXIT_COMPUTE, EXIT_CONFIG};
pub use manifest::{CurveReport, GridReport, RunManifest};
