use super::adjacency::pair_count;
use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatentKind {
    UnitSphere,
    StandardNormal,
}

/// n × d latent positions, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct LatentMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    kind: LatentKind,
}

impl LatentMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>, kind: LatentKind) -> Result<Self> {
        let n = rows.len();
        let d = rows.first().map_or(0, Vec::len);
        if n == 0 || d == 0 || rows.iter().any(|r| r.len() != d) {
            return Err(Error::Format("latent rows must be non-empty and of equal length".into()));
        }
        let data: Vec<f64> = rows.into_iter().flatten().collect();
        let m = Self { rows: n, cols: d, data, kind };
        if kind == LatentKind::UnitSphere {
            for i in 0..n {
                let norm = m.row(i).iter().map(|v| v * v).sum::<f64>().sqrt();
                if (norm - 1.0).abs() > 1e-12 {
                    return Err(Error::Format(format!("row {i} has norm {norm}, expected 1")));
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn kind(&self) -> LatentKind {
        self.kind
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn inner(&self, i: usize, j: usize) -> f64 {
        self.row(i).iter().zip(self.row(j)).map(|(a, b)| a * b).sum()
    }
}

/// Rows i.i.d. N(0, I_d), normalized for the sphere (z/‖z‖ is uniform on S^{d−1}).
pub fn sample_latent<R: Rng + ?Sized>(n: usize, d: usize, kind: LatentKind, rng: &mut R) -> LatentMatrix {
    let mut data = Vec::with_capacity(n * d);
    for _ in 0..n {
        let start = data.len();
        data.extend((0..d).map(|_| rng.sample::<f64, _>(StandardNormal)));
        if kind == LatentKind::UnitSphere {
            let row = &mut data[start..];
            let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
            row.iter_mut().for_each(|v| *v /= norm);
        }
    }
    LatentMatrix { rows: n, cols: d, data, kind }
}

/// Off-diagonal inner products ⟨x_i, x_j⟩, i < j, in pair order.
#[derive(Debug, Clone, PartialEq)]
pub struct Gram {
    n: usize,
    values: Vec<f64>,
}

impl Gram {
    pub fn from_latent(latent: &LatentMatrix) -> Self {
        let n = latent.rows;
        let mut values = Vec::with_capacity(pair_count(n));
        for i in 0..n {
            for j in i + 1..n {
                values.push(latent.inner(i, j));
            }
        }
        Self { n, values }
    }

    /// Gram matrix of n latent rows drawn without materialising them: ZZᵀ is
    /// Wishart(d, I_n), sampled through the Bartlett factor L (L_ii² ~ χ²(d−i),
    /// L_ij ~ N(0,1) below the diagonal). For the sphere the entries are
    /// normalised by √(W_ii W_jj). Requires d ≥ n.
    pub fn wishart<R: Rng + ?Sized>(n: usize, d: usize, kind: LatentKind, rng: &mut R) -> Result<Self> {
        if d < n {
            return Err(Error::SingularWishart { n, d });
        }
        let mut l = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..i {
                l[i * n + j] = rng.sample(StandardNormal);
            }
            let chi = ChiSquared::new((d - i) as f64).map_err(|e| Error::domain(e.to_string()))?;
            l[i * n + i] = chi.sample(rng).sqrt();
        }
        let w = |i: usize, j: usize| -> f64 { (0..=i.min(j)).map(|k| l[i * n + k] * l[j * n + k]).sum() };
        let diag: Vec<f64> = (0..n).map(|i| w(i, i)).collect();
        let mut values = Vec::with_capacity(pair_count(n));
        for i in 0..n {
            for j in i + 1..n {
                let v = w(i, j);
                values.push(match kind {
                    LatentKind::UnitSphere => v / (diag[i] * diag[j]).sqrt(),
                    LatentKind::StandardNormal => v,
                });
            }
        }
        Ok(Self { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Values in pair order (0,1), (0,2), …, (n−2, n−1).
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}
