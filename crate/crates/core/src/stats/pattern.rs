use crate::error::{Error, Result};
use crate::mc::{replicate_values, Estimate};
use crate::model::{
    derive_seed, gauss_threshold, sample_latent, sphere_threshold, stream_rng, AdjacencySample, Gram, GraphSampler,
    LatentKind, ModelParams, SamplerMode, Stream,
};

use super::MAX_ORDER;

/// Edge set on vertices 0..m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    m: usize,
    edges: Vec<(usize, usize)>,
}

impl Pattern {
    pub fn new(m: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if !(2..=MAX_ORDER).contains(&m) {
            return Err(Error::UnsupportedOrder { k: m, max: MAX_ORDER });
        }
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == b || a >= m || b >= m {
                return Err(Error::params(format!("pattern edge ({a}, {b}) invalid for m = {m}")));
            }
            let e = (a.min(b), a.max(b));
            if norm.contains(&e) {
                return Err(Error::params(format!("duplicate pattern edge {e:?}")));
            }
            norm.push(e);
        }
        if norm.is_empty() {
            return Err(Error::params("pattern needs at least one edge"));
        }
        Ok(Self { m, edges: norm })
    }

    pub fn edge() -> Self {
        Self { m: 2, edges: vec![(0, 1)] }
    }

    /// Open path with `len` edges on len + 1 vertices.
    pub fn path(len: usize) -> Result<Self> {
        Self::new(len + 1, (0..len).map(|i| (i, i + 1)).collect())
    }

    pub fn triangle() -> Self {
        Self { m: 3, edges: vec![(0, 1), (1, 2), (0, 2)] }
    }

    /// 0 – 1 – … – (k−1) – 0
    pub fn cycle(k: usize) -> Result<Self> {
        Self::new(k, (0..k).map(|i| (i, (i + 1) % k)).collect())
    }

    pub fn clique(k: usize) -> Result<Self> {
        Self::new(k, (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect())
    }

    pub fn vertices(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn pair_slots(&self) -> Vec<usize> {
        self.edges.iter().map(|&(a, b)| crate::model::pair_index(a, b, self.m)).collect()
    }
}

/// Monte Carlo estimate of P(every pattern edge is present) in the hard
/// geometric model, drawing only the m latent points of the pattern per
/// replicate. Unit-sphere positions use t_{p,d}; standard-normal positions
/// use u_{p,d}.
pub fn subgraph_probability_estimate(
    kind: LatentKind,
    p: f64,
    d: usize,
    pattern: &Pattern,
    reps: usize,
    seed: u64,
) -> Result<Estimate> {
    if reps == 0 {
        return Err(Error::params("reps must be positive"));
    }
    let t = match kind {
        LatentKind::UnitSphere => sphere_threshold(p, d)?,
        LatentKind::StandardNormal => gauss_threshold(p, d)?,
    };
    let m = pattern.vertices();
    let slots = pattern.pair_slots();
    let values = replicate_values(reps, |r| {
        let mut rng = stream_rng(derive_seed(seed, &[r]), Stream::Latent);
        let gram = if d >= m {
            Gram::wishart(m, d, kind, &mut rng).expect("d ≥ m")
        } else {
            Gram::from_latent(&sample_latent(m, d, kind, &mut rng))
        };
        let g = gram.values();
        if slots.iter().all(|&k| g[k] >= t) {
            1.0
        } else {
            0.0
        }
    });
    Ok(Estimate::from_values(&values))
}

/// Monte Carlo mean of λ_H = ∏_{e ∈ H} (a_e − p) for graphs on exactly the
/// pattern's vertices drawn from `sampler`.
pub fn signed_pattern_estimate(sampler: &GraphSampler, pattern: &Pattern, reps: usize, seed: u64) -> Result<Estimate> {
    if sampler.params().n != pattern.vertices() {
        return Err(Error::params("sampler n must equal the pattern's vertex count"));
    }
    if reps == 0 {
        return Err(Error::params("reps must be positive"));
    }
    let p = sampler.params().p;
    let slots = pattern.pair_slots();
    let values = replicate_values(reps, |r| {
        let g = sampler.sample(derive_seed(seed, &[r]));
        slots.iter().map(|&k| if g.has_pair(k) { 1.0 - p } else { -p }).product()
    });
    Ok(Estimate::from_values(&values))
}

/// Paired q-scaling residual. Each replicate draws one Gram matrix for the
/// pattern's vertices, builds the hard graph and a soft graph on it, and
/// records D = λ_soft − q^{|F|}·λ_hard. Conditionally on the Gram matrix the
/// soft edges are independent with centered mean q·(a_hard − p), so D has
/// mean exactly 0.
pub fn q_scaling_difference(pattern: &Pattern, p: f64, d: usize, q: f64, reps: usize, seed: u64) -> Result<Estimate> {
    let m = pattern.vertices();
    if d < m {
        return Err(Error::SingularWishart { n: m, d });
    }
    if reps == 0 {
        return Err(Error::params("reps must be positive"));
    }
    let hard = GraphSampler::new(ModelParams::new(m, p, d, 1.0)?, SamplerMode::HardSphere)?;
    let soft = GraphSampler::new(ModelParams::new(m, p, d, q)?, SamplerMode::SoftSphere)?;
    let slots = pattern.pair_slots();
    let lambda =
        |g: &AdjacencySample| -> f64 { slots.iter().map(|&k| if g.has_pair(k) { 1.0 - p } else { -p }).product() };
    let factor = q.powi(slots.len() as i32);
    let values = replicate_values(reps, |r| {
        let s = derive_seed(seed, &[r]);
        let gram = Gram::wishart(m, d, LatentKind::UnitSphere, &mut stream_rng(s, Stream::Latent)).expect("d ≥ m");
        let h = hard.sample_given_gram(&gram, s).expect("sizes match");
        let g = soft.sample_given_gram(&gram, s).expect("sizes match");
        lambda(&g) - factor * lambda(&h)
    });
    Ok(Estimate::from_values(&values))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_validation() {
        assert!(Pattern::new(3, vec![(0, 0)]).is_err());
        assert!(Pattern::new(3, vec![(0, 3)]).is_err());
        assert!(Pattern::new(3, vec![(0, 1), (1, 0)]).is_err());
        assert!(Pattern::new(9, vec![(0, 1)]).is_err());
        assert!(Pattern::new(3, vec![]).is_err());
        assert_eq!(Pattern::cycle(4).unwrap().edges().len(), 4);
        assert_eq!(Pattern::clique(5).unwrap().edges().len(), 10);
        assert_eq!(Pattern::path(2).unwrap().vertices(), 3);
    }

    #[test]
    fn single_edge_has_probability_p() {
        for kind in [LatentKind::UnitSphere, LatentKind::StandardNormal] {
            let est = subgraph_probability_estimate(kind, 0.3, 16, &Pattern::edge(), 200_000, 1).unwrap();
            assert!((est.mean - 0.3).abs() <= 3.0 * est.se, "{kind:?}: {est:?}");
        }
    }

    #[test]
    fn open_path_has_probability_p_squared() {
        let est =
            subgraph_probability_estimate(LatentKind::UnitSphere, 0.3, 16, &Pattern::path(2).unwrap(), 400_000, 2)
                .unwrap();
        assert!((est.mean - 0.09).abs() <= 3.0 * est.se, "{est:?}");
        // explicit-coordinate route as well (d < m)
        let est = subgraph_probability_estimate(LatentKind::UnitSphere, 0.3, 2, &Pattern::path(2).unwrap(), 400_000, 3)
            .unwrap();
        assert!((est.mean - 0.09).abs() <= 3.0 * est.se, "{est:?}");
    }

    #[test]
    fn signed_pattern_needs_matching_size() {
        let s = GraphSampler::new(ModelParams::new(4, 0.5, 8, 1.0).unwrap(), SamplerMode::HardSphere).unwrap();
        assert!(signed_pattern_estimate(&s, &Pattern::triangle(), 10, 0).is_err());
        assert!(signed_pattern_estimate(&s, &Pattern::cycle(4).unwrap(), 10, 0).is_ok());
    }
}
