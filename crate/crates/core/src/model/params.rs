use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// (n, p, d, q) for one model instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub n: usize,
    pub p: f64,
    pub d: usize,
    pub q: f64,
}

impl ModelParams {
    pub fn new(n: usize, p: f64, d: usize, q: f64) -> Result<Self> {
        let params = Self { n, p, d, q };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::params("n must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::params(format!("p = {} not in [0,1]", self.p)));
        }
        if self.d < 1 {
            return Err(Error::params("d must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.q) {
            return Err(Error::params(format!("q = {} not in [0,1]", self.q)));
        }
        Ok(())
    }

    /// p ∈ {0, 1}: the graph is empty or complete and no threshold exists.
    pub fn is_degenerate(&self) -> bool {
        self.p == 0.0 || self.p == 1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplerMode {
    /// Independent Bernoulli(p) edges.
    Er,
    /// 1{⟨x_i, x_j⟩ ≥ t_{p,d}} on the unit sphere; q is ignored.
    HardSphere,
    /// Bernoulli(φ_q(⟨x_i, x_j⟩)) given the sphere positions.
    SoftSphere,
    /// Hard sphere graph, then each pair kept with probability q or redrawn as Bernoulli(p).
    SoftSphereResample,
    /// Soft model on standard-normal positions with threshold u_{p,d}.
    DotProduct,
}

impl SamplerMode {
    pub const ALL: [SamplerMode; 5] = [
        SamplerMode::Er,
        SamplerMode::HardSphere,
        SamplerMode::SoftSphere,
        SamplerMode::SoftSphereResample,
        SamplerMode::DotProduct,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SamplerMode::Er => "er",
            SamplerMode::HardSphere => "hard-sphere",
            SamplerMode::SoftSphere => "soft-sphere",
            SamplerMode::SoftSphereResample => "soft-sphere-resample",
            SamplerMode::DotProduct => "dot-product",
        }
    }

    pub fn uses_latent(&self) -> bool {
        !matches!(self, SamplerMode::Er)
    }
}

impl fmt::Display for SamplerMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SamplerMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::params(format!("unknown sampler mode '{s}'")))
    }
}
