//! Fixed inputs shared by the benchmarks.

use rgg_core::{AdjacencySample, GraphSampler, ModelParams, SamplerMode};

/// A soft sphere graph at p = 1/2 with d = n / 2, drawn from a fixed seed.
pub fn soft_graph(n: usize) -> AdjacencySample {
    let params = ModelParams::new(n, 0.5, (n / 2).max(2), 0.8).expect("valid parameters");
    GraphSampler::new(params, SamplerMode::SoftSphere).expect("valid sampler").sample(0xBEEF)
}

pub fn sampler(n: usize, d: usize, mode: SamplerMode) -> GraphSampler {
    GraphSampler::new(ModelParams::new(n, 0.5, d, 0.7).expect("valid parameters"), mode).expect("valid sampler")
}
