//! Experiment driver: declarative configs, parallel sweeps over noise levels
//! and methods, CSV/PGM outputs.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod builtin;
pub mod check;
pub mod config;
pub mod error;
pub mod experiment;
pub mod output;
pub mod setup;

pub use config::ExperimentConfig;
pub use error::HarnessError;
pub use experiment::{run_experiment, ExperimentReport, SummaryRow};
pub use output::write_outputs;
