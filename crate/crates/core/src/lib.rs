//! Latent geometry detection in noisy high-dimensional random geometric graphs.
//!
//! The crate samples the family of graphs that interpolates between
//! Erdős–Rényi graphs and hard spherical geometric graphs, evaluates signed
//! subgraph statistics, runs detection experiments, and checks the analytic
//! identities and bounds that govern the detection problem.

pub mod error;
pub mod mc;
pub mod model;
pub mod specfun;
pub mod stats;
pub mod theory;
pub mod verify;

pub use error::{Error, Result};
pub use mc::{ExperimentConfig, ExperimentRecord, Harness, TestKind};
pub use model::{
    AdjacencySample, ConnectionFunction, GraphSampler, LatentKind, LatentMatrix, ModelParams, SamplerMode, Thresholds,
};
pub use stats::{StatisticKind, StatisticSpec, StatisticValue};
pub use theory::{HalfMomentTable, PhaseLabel, PhasePoint};
