use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// d = n^α, q = n^{−β}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub alpha: f64,
    pub beta: f64,
}

impl PhasePoint {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && beta > 0.0) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::domain(format!("phase point needs α, β > 0, got ({alpha}, {beta})")));
        }
        Ok(Self { alpha, beta })
    }

    /// α = log d / log n, β = −log q / log n; None when either is not positive
    /// and finite (n = 1, d = 1, q ∈ {0, 1}).
    pub fn from_model(n: usize, d: usize, q: f64) -> Option<Self> {
        if n < 2 {
            return None;
        }
        let ln_n = (n as f64).ln();
        Self::new((d as f64).ln() / ln_n, -q.ln() / ln_n).ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhaseLabel {
    Impossible,
    Possible,
    Unknown,
}

impl PhaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            PhaseLabel::Impossible => "Impossible",
            PhaseLabel::Possible => "Possible",
            PhaseLabel::Unknown => "Unknown",
        }
    }
}

impl fmt::Display for PhaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Sums within this distance of a boundary value count as equal to it, so
/// decimal grids such as α = 0.9, β = 0.35 land on the boundary.
pub const BOUNDARY_TOLERANCE: f64 = 1e-12;

/// Impossible if β > 1 or α + 2β > 3; Possible if α + 6β < 3; otherwise
/// (including every boundary equality) Unknown.
pub fn phase_classify(pt: PhasePoint) -> PhaseLabel {
    let PhasePoint { alpha, beta } = pt;
    let above = |x: f64, bound: f64| x > bound + BOUNDARY_TOLERANCE;
    let below = |x: f64, bound: f64| x < bound - BOUNDARY_TOLERANCE;
    if above(beta, 1.0) || above(alpha + 2.0 * beta, 3.0) {
        PhaseLabel::Impossible
    } else if below(alpha + 6.0 * beta, 3.0) {
        PhaseLabel::Possible
    } else {
        PhaseLabel::Unknown
    }
}
