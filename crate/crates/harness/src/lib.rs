//! Experiment runner for the `jpda-core` solvers: dataset ingestion,
//! configuration, algorithm execution and CSV/JSON reporting.

pub mod cli;
pub mod config;
pub mod dataset;
pub mod embed;
pub mod error;
pub mod reference;
pub mod report;
pub mod runner;

pub use config::{DataSource, ExperimentConfig};
pub use error::{HarnessError, Result};
pub use report::RunReport;
