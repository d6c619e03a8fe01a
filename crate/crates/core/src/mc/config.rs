use super::harness::TestKind;
use crate::error::{Error, Result};
use crate::model::{ModelParams, SamplerMode};
use crate::stats::StatisticSpec;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridPoint {
    pub n: usize,
    pub p: f64,
    pub d: usize,
    pub q: f64,
    #[serde(default = "default_mode")]
    pub mode: SamplerMode,
}

impl GridPoint {
    pub fn params(&self) -> Result<ModelParams> {
        ModelParams::new(self.n, self.p, self.d, self.q)
    }
}

/// Grid over (α, β) at fixed n, mapped to d = ⌈n^α⌉ and q = n^{−β}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseGrid {
    pub n: usize,
    #[serde(default = "default_p")]
    pub p: f64,
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    #[serde(default = "default_mode")]
    pub mode: SamplerMode,
}

impl PhaseGrid {
    pub fn points(&self) -> Result<Vec<GridPoint>> {
        if self.n < 2 {
            return Err(Error::params("phase grid needs n ≥ 2"));
        }
        let nf = self.n as f64;
        let mut out = Vec::with_capacity(self.alphas.len() * self.betas.len());
        for &alpha in &self.alphas {
            if !(alpha > 0.0 && alpha.is_finite()) {
                return Err(Error::params(format!("alpha = {alpha} must be positive")));
            }
            let raw = nf.powf(alpha);
            // n^α that is an integer up to rounding noise maps to itself
            let d = if (raw - raw.round()).abs() < 1e-9 * raw { raw.round() } else { raw.ceil() };
            for &beta in &self.betas {
                if !(beta > 0.0 && beta.is_finite()) {
                    return Err(Error::params(format!("beta = {beta} must be positive")));
                }
                out.push(GridPoint { n: self.n, p: self.p, d: d as usize, q: nf.powf(-beta), mode: self.mode });
            }
        }
        Ok(out)
    }
}

fn default_mode() -> SamplerMode {
    SamplerMode::SoftSphere
}

fn default_p() -> f64 {
    0.5
}

fn default_statistic() -> StatisticSpec {
    StatisticSpec::TRIANGLE
}

/// A sweep description, read from JSON. Points from `grid` come first,
/// followed by those of `phase_grid` (α outer, β inner).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub grid: Vec<GridPoint>,
    #[serde(default)]
    pub phase_grid: Option<PhaseGrid>,
    pub reps: usize,
    pub master_seed: u64,
    #[serde(default = "default_statistic")]
    pub statistic: StatisticSpec,
    #[serde(default)]
    pub test: TestKind,
    #[serde(default)]
    pub workers: Option<usize>,
    /// Index of the first grid point to run; earlier points are skipped.
    #[serde(default)]
    pub start_index: usize,
    /// Record wall-clock time per point. Off by default so reruns produce
    /// identical output.
    #[serde(default)]
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn points(&self) -> Result<Vec<GridPoint>> {
        let mut pts = self.grid.clone();
        if let Some(pg) = &self.phase_grid {
            pts.extend(pg.points()?);
        }
        Ok(pts)
    }

    pub fn validate(&self) -> Result<()> {
        if self.reps < 2 {
            return Err(Error::params("reps must be at least 2"));
        }
        if self.workers == Some(0) {
            return Err(Error::params("workers must be positive"));
        }
        StatisticSpec::new(self.statistic.kind, self.statistic.k)?;
        let pts = self.points()?;
        if pts.is_empty() {
            return Err(Error::params("grid is empty"));
        }
        if self.start_index > pts.len() {
            return Err(Error::params(format!("start_index {} beyond grid of {}", self.start_index, pts.len())));
        }
        for pt in &pts {
            pt.params()?;
        }
        Ok(())
    }
}
