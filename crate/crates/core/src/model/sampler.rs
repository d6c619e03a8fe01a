use super::adjacency::{pair_count, AdjacencySample};
use super::latent::{sample_latent, Gram, LatentKind, LatentMatrix};
use super::params::{ModelParams, SamplerMode};
use super::rng::{stream_rng, Stream};
use super::threshold::{gauss_threshold, sphere_threshold};
use crate::error::{Error, Result};
use rand::Rng;
use serde::Serialize;

/// φ_q(x) = (1 − q)p + q·1{x ≥ threshold}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConnectionFunction {
    pub p: f64,
    pub q: f64,
    pub threshold: f64,
}

impl ConnectionFunction {
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        let base = (1.0 - self.q) * self.p;
        if x >= self.threshold {
            base + self.q
        } else {
            base
        }
    }
}

/// How inner products are produced for latent-position modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GramRoute {
    /// Draw the n × d latent matrix and take inner products.
    Explicit,
    /// Draw the Gram matrix directly from its Wishart law (d ≥ n only).
    Wishart,
}

/// A sampler for one (params, mode) pair with its threshold precomputed.
///
/// `sample(seed)` is a pure function of the seed. Latent draws use the
/// [`Stream::Latent`] sub-stream of the seed and edge coin flips the
/// [`Stream::Edges`] sub-stream, so a latent matrix can be replayed with
/// fresh or identical edge noise.
#[derive(Debug, Clone)]
pub struct GraphSampler {
    params: ModelParams,
    mode: SamplerMode,
    threshold: Option<f64>,
    route: GramRoute,
}

impl GraphSampler {
    pub fn new(params: ModelParams, mode: SamplerMode) -> Result<Self> {
        params.validate()?;
        let threshold = if params.is_degenerate() {
            None
        } else {
            match mode {
                SamplerMode::Er => None,
                SamplerMode::HardSphere | SamplerMode::SoftSphere | SamplerMode::SoftSphereResample => {
                    if params.d < 2 {
                        return Err(Error::params("sphere models need d ≥ 2"));
                    }
                    Some(sphere_threshold(params.p, params.d)?)
                }
                SamplerMode::DotProduct => Some(gauss_threshold(params.p, params.d)?),
            }
        };
        // Wishart costs O(n³) against O(n²d) for explicit rows.
        let route = if params.d > params.n { GramRoute::Wishart } else { GramRoute::Explicit };
        Ok(Self { params, mode, threshold, route })
    }

    pub fn with_route(mut self, route: GramRoute) -> Result<Self> {
        if route == GramRoute::Wishart && self.params.d < self.params.n {
            return Err(Error::SingularWishart { n: self.params.n, d: self.params.d });
        }
        self.route = route;
        Ok(self)
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn mode(&self) -> SamplerMode {
        self.mode
    }

    pub fn route(&self) -> GramRoute {
        self.route
    }

    pub fn threshold(&self) -> Option<f64> {
        self.threshold
    }

    pub fn latent_kind(&self) -> LatentKind {
        match self.mode {
            SamplerMode::DotProduct => LatentKind::StandardNormal,
            _ => LatentKind::UnitSphere,
        }
    }

    pub fn connection(&self) -> Option<ConnectionFunction> {
        let q = match self.mode {
            SamplerMode::HardSphere => 1.0,
            _ => self.params.q,
        };
        self.threshold.map(|threshold| ConnectionFunction { p: self.params.p, q, threshold })
    }

    /// Conditional probability of an edge given the inner product `x`,
    /// written out for each construction separately.
    pub fn edge_probability(&self, x: f64) -> f64 {
        let ModelParams { p, q, .. } = self.params;
        let Some(t) = self.threshold else { return p };
        let hit = if x >= t { 1.0 } else { 0.0 };
        match self.mode {
            SamplerMode::Er => p,
            SamplerMode::HardSphere => hit,
            SamplerMode::SoftSphere | SamplerMode::DotProduct => ConnectionFunction { p, q, threshold: t }.eval(x),
            // kept with probability q, otherwise an independent Bernoulli(p)
            SamplerMode::SoftSphereResample => q * hit + (1.0 - q) * p,
        }
    }

    pub fn sample(&self, seed: u64) -> AdjacencySample {
        self.sample_full(seed).0
    }

    /// Graph plus the latent matrix when one was materialised (explicit route).
    pub fn sample_full(&self, seed: u64) -> (AdjacencySample, Option<LatentMatrix>) {
        let ModelParams { n, p, d, .. } = self.params;
        if p == 0.0 {
            return (AdjacencySample::empty(n, p, self.mode, seed), None);
        }
        if p == 1.0 {
            return (AdjacencySample::complete(n, p, self.mode, seed), None);
        }
        if self.mode == SamplerMode::Er {
            return (self.edges_from(None, seed), None);
        }
        let mut rng = stream_rng(seed, Stream::Latent);
        match self.route {
            GramRoute::Explicit => {
                let latent = sample_latent(n, d, self.latent_kind(), &mut rng);
                let gram = Gram::from_latent(&latent);
                (self.edges_from(Some(&gram), seed), Some(latent))
            }
            GramRoute::Wishart => {
                let gram = Gram::wishart(n, d, self.latent_kind(), &mut rng).expect("route is Wishart only when d ≥ n");
                (self.edges_from(Some(&gram), seed), None)
            }
        }
    }

    /// Edges for a given latent matrix, using the edge stream of `seed`.
    pub fn sample_given_latent(&self, latent: &LatentMatrix, seed: u64) -> Result<AdjacencySample> {
        if latent.rows() != self.params.n || latent.cols() != self.params.d {
            return Err(Error::params("latent matrix shape does not match (n, d)"));
        }
        if latent.kind() != self.latent_kind() {
            return Err(Error::params("latent kind does not match sampler mode"));
        }
        let ModelParams { n, p, .. } = self.params;
        if p == 0.0 {
            return Ok(AdjacencySample::empty(n, p, self.mode, seed));
        }
        if p == 1.0 {
            return Ok(AdjacencySample::complete(n, p, self.mode, seed));
        }
        Ok(self.edges_from(Some(&Gram::from_latent(latent)), seed))
    }

    pub fn sample_given_gram(&self, gram: &Gram, seed: u64) -> Result<AdjacencySample> {
        if gram.n() != self.params.n {
            return Err(Error::params("Gram size does not match n"));
        }
        Ok(self.edges_from(Some(gram), seed))
    }

    fn edges_from(&self, gram: Option<&Gram>, seed: u64) -> AdjacencySample {
        let ModelParams { n, p, q, .. } = self.params;
        let mut g = AdjacencySample::empty(n, p, self.mode, seed);
        if p == 0.0 || p == 1.0 {
            return if p == 1.0 { AdjacencySample::complete(n, p, self.mode, seed) } else { g };
        }
        let mut rng = stream_rng(seed, Stream::Edges);
        let t = self.threshold.unwrap_or(f64::INFINITY);
        let pairs = pair_count(n);
        match (self.mode, gram) {
            (SamplerMode::Er, _) | (_, None) => {
                for k in 0..pairs {
                    g.set_pair(k, rng.gen::<f64>() < p);
                }
            }
            (SamplerMode::HardSphere, Some(gram)) => {
                for (k, &x) in gram.values().iter().enumerate() {
                    g.set_pair(k, x >= t);
                }
            }
            (SamplerMode::SoftSphere | SamplerMode::DotProduct, Some(gram)) => {
                let phi = ConnectionFunction { p, q, threshold: t };
                for (k, &x) in gram.values().iter().enumerate() {
                    g.set_pair(k, rng.gen::<f64>() < phi.eval(x));
                }
            }
            (SamplerMode::SoftSphereResample, Some(gram)) => {
                for (k, &x) in gram.values().iter().enumerate() {
                    // two draws per pair keep the stream aligned regardless of outcome
                    let keep: f64 = rng.gen();
                    let redraw: f64 = rng.gen();
                    g.set_pair(k, if keep < q { x >= t } else { redraw < p });
                }
            }
        }
        g
    }
}
