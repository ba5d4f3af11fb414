//! Command-line runner for the packetlab experiments.

pub mod config;
pub mod run;

pub use config::{parse_config, ConfigError, Experiment, Overrides, Params, RunConfig};
pub use run::{execute, run, Artifacts, CliError, RunSummary};
