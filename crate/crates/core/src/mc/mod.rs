//! Seeded parallel Monte Carlo: replicate estimators, detection experiments
//! and parameter sweeps.
//!
//! Every replicate draws its randomness from `derive_seed(master, path)` with
//! a path built from task indices, and results are reduced in index order.
//! Outputs therefore depend on the master seed only, never on the number of
//! worker threads.

mod config;
mod csv;
mod estimate;
mod harness;

pub use config::{ExperimentConfig, GridPoint, PhaseGrid};
pub use csv::{format_float, CsvWriter, CSV_HEADER};
pub use estimate::{replicate_values, Estimate};
pub use harness::{
    default_workers, ExperimentRecord, Harness, RecordStatus, TestKind, CALIBRATION_LEVEL, MIN_DETECTION_REPS,
};
