//! Model parameters, thresholds, latent positions and graph samplers.

mod adjacency;
mod io;
mod latent;
mod params;
mod rng;
mod sampler;
mod threshold;

pub use adjacency::{pair_count, pair_index, AdjacencySample};
pub use io::{GraphFile, LatentFile};
pub use latent::{sample_latent, Gram, LatentKind, LatentMatrix};
pub use params::{ModelParams, SamplerMode};
pub use rng::{derive_seed, stream_rng, Stream};
pub use sampler::{ConnectionFunction, GramRoute, GraphSampler};
pub use threshold::{delta_constants, gauss_tail_probability, gauss_threshold, sphere_threshold, Thresholds};
