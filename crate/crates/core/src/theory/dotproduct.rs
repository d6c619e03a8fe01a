use crate::error::{Error, Result};
use crate::mc::Estimate;
use crate::model::{derive_seed, LatentKind};
use crate::stats::{subgraph_probability_estimate, Pattern};
use serde::Serialize;

/// Monte Carlo probabilities of the two-edge path and the triangle in the
/// hard dot-product graph with standard-normal latent positions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DotProductEstimates {
    pub p: f64,
    pub d: usize,
    pub cherry: Estimate,
    pub triangle: Estimate,
}

pub fn estimate_dotproduct_events(p: f64, d: usize, reps: usize, seed: u64) -> Result<DotProductEstimates> {
    if d < 1 {
        return Err(Error::params("d must be at least 1"));
    }
    let kind = LatentKind::StandardNormal;
    let cherry = subgraph_probability_estimate(kind, p, d, &Pattern::path(2)?, reps, derive_seed(seed, &[0]))?;
    let triangle = subgraph_probability_estimate(kind, p, d, &Pattern::triangle(), reps, derive_seed(seed, &[1]))?;
    Ok(DotProductEstimates { p, d, cherry, triangle })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DotProductReport {
    pub p: f64,
    pub d: usize,
    /// P̂(E^Λ) − p²
    pub cherry_excess: f64,
    /// 8/d
    pub cherry_bound: f64,
    pub cherry_pass: bool,
    /// P̂(E^Δ) − p³ and its standard error
    pub triangle_excess: f64,
    pub triangle_se: f64,
    pub triangle_pass: bool,
    /// √d·(P̂(E^Δ) − p³) and its standard error
    pub triangle_scaled: f64,
    pub triangle_scaled_se: f64,
}

pub fn dotproduct_bound_predicates(est: &DotProductEstimates) -> DotProductReport {
    let (p, d) = (est.p, est.d as f64);
    let cherry_excess = est.cherry.mean - p * p;
    let cherry_bound = 8.0 / d;
    let triangle_excess = est.triangle.mean - p.powi(3);
    DotProductReport {
        p,
        d: est.d,
        cherry_excess,
        cherry_bound,
        cherry_pass: cherry_excess <= cherry_bound + 3.0 * est.cherry.se,
        triangle_excess,
        triangle_se: est.triangle.se,
        triangle_pass: triangle_excess > -3.0 * est.triangle.se,
        triangle_scaled: d.sqrt() * triangle_excess,
        triangle_scaled_se: d.sqrt() * est.triangle.se,
    }
}

impl DotProductReport {
    /// Difference of the √d-scaled triangle excess between two reports in
    /// units of their joint standard error.
    pub fn scaled_z(&self, other: &Self) -> f64 {
        let joint = self.triangle_scaled_se.hypot(other.triangle_scaled_se);
        (self.triangle_scaled - other.triangle_scaled).abs() / joint
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_cherry_has_no_excess() {
        let est = estimate_dotproduct_events(0.5, 16, 200_000, 5).unwrap();
        let r = dotproduct_bound_predicates(&est);
        assert!(r.cherry_excess.abs() <= 3.0 * est.cherry.se, "{r:?}");
        assert!(r.cherry_pass && r.triangle_pass);
        assert!(r.triangle_excess > 0.0);
    }

    #[test]
    fn scaled_z_is_symmetric() {
        let a = dotproduct_bound_predicates(&estimate_dotproduct_events(0.3, 16, 20_000, 1).unwrap());
        let b = dotproduct_bound_predicates(&estimate_dotproduct_events(0.3, 64, 20_000, 2).unwrap());
        assert_eq!(a.scaled_z(&b), b.scaled_z(&a));
    }
}
