//! JSON file formats for graphs and latent matrices.

use super::adjacency::AdjacencySample;
use super::latent::{LatentKind, LatentMatrix};
use super::params::SamplerMode;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// `{"n", "p", "mode", "seed", "edges": [[i, j], ...]}` with 0-based i < j.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    pub p: f64,
    pub mode: SamplerMode,
    pub seed: u64,
    pub edges: Vec<[usize; 2]>,
}

impl From<&AdjacencySample> for GraphFile {
    fn from(g: &AdjacencySample) -> Self {
        Self {
            n: g.n(),
            p: g.p(),
            mode: g.mode(),
            seed: g.seed(),
            edges: g.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

impl GraphFile {
    pub fn into_sample(self) -> Result<AdjacencySample> {
        if let Some([i, j]) = self.edges.iter().find(|[i, j]| i >= j) {
            return Err(Error::Format(format!("edge [{i}, {j}] is not ordered i < j")));
        }
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[i, j]| (i, j)).collect();
        AdjacencySample::from_edges(self.n, self.p, self.mode, self.seed, &edges)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }
}

/// `{"n", "d", "kind", "rows": [[...], ...]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatentFile {
    pub n: usize,
    pub d: usize,
    pub kind: LatentKind,
    pub rows: Vec<Vec<f64>>,
}

impl From<&LatentMatrix> for LatentFile {
    fn from(x: &LatentMatrix) -> Self {
        Self { n: x.rows(), d: x.cols(), kind: x.kind(), rows: (0..x.rows()).map(|i| x.row(i).to_vec()).collect() }
    }
}

impl LatentFile {
    pub fn into_matrix(self) -> Result<LatentMatrix> {
        if self.rows.len() != self.n || self.rows.iter().any(|r| r.len() != self.d) {
            return Err(Error::Format("latent file shape does not match n, d".into()));
        }
        LatentMatrix::from_rows(self.rows, self.kind)
    }
}
