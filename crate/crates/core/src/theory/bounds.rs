use crate::error::{Error, Result};
use crate::model::{LatentKind, ModelParams};
use crate::stats::{subgraph_probability_estimate, Pattern};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

const TRIANGLE_LOWER: f64 = 0.063_493_635_934_240_98; // 1/(2π√(2π))
const TRIANGLE_UPPER: f64 = 0.141_047_395_886_939_07; // 1/(4√π)

/// Dimensions and replicate budget used to measure the general-p triangle
/// constant.
pub const MEASURE_DIMS: [usize; 2] = [64, 256];
pub const MEASURE_REPS: usize = 1_000_000;
const MEASURE_SEED: u64 = 0x7431_5f63_6f6e_7374;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "source", rename_all = "kebab-case")]
pub enum ConstantSource {
    Analytic,
    Measured { reps: usize, seed: u64 },
}

/// Bracket on E[τ_[3]] = C(n,3)·E[τ₁₂₃]. For p ≠ 1/2 only a lower bound is
/// available.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanBounds {
    pub lower: f64,
    pub upper: Option<f64>,
    pub constant: f64,
    pub constant_source: ConstantSource,
}

fn triples(n: usize) -> f64 {
    if n < 3 {
        0.0
    } else {
        let n = n as f64;
        n * (n - 1.0) * (n - 2.0) / 6.0
    }
}

fn cache() -> &'static Mutex<HashMap<u64, f64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, f64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Conservative Monte Carlo value of C_p in P(E^Δ) − p³ ≥ C_p/√d: the minimum
/// over [`MEASURE_DIMS`] of √d·(P̂ − p³ − 3·SE), floored at 0. Computed once
/// per p and cached for the life of the process.
pub fn measured_triangle_constant(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(format!("p = {p} must lie in (0, 1)")));
    }
    if let Some(&c) = cache().lock().expect("cache poisoned").get(&p.to_bits()) {
        return Ok(c);
    }
    let mut c = f64::INFINITY;
    for &d in &MEASURE_DIMS {
        let est = subgraph_probability_estimate(
            LatentKind::UnitSphere,
            p,
            d,
            &Pattern::triangle(),
            MEASURE_REPS,
            MEASURE_SEED ^ d as u64,
        )?;
        c = c.min((d as f64).sqrt() * (est.mean - p.powi(3) - 3.0 * est.se));
    }
    let c = c.max(0.0);
    cache().lock().expect("cache poisoned").insert(p.to_bits(), c);
    Ok(c)
}

pub fn signed_triangle_mean_bounds(n: usize, p: f64, d: usize, q: f64) -> Result<MeanBounds> {
    ModelParams::new(n, p, d, q)?;
    if d < 2 {
        return Err(Error::params("d must be at least 2"));
    }
    let scale = triples(n) * q.powi(3) / (d as f64).sqrt();
    if p == 0.5 {
        return Ok(MeanBounds {
            lower: scale * TRIANGLE_LOWER,
            upper: Some(scale * TRIANGLE_UPPER),
            constant: TRIANGLE_LOWER,
            constant_source: ConstantSource::Analytic,
        });
    }
    if p == 0.0 || p == 1.0 {
        return Ok(MeanBounds {
            lower: 0.0,
            upper: Some(0.0),
            constant: 0.0,
            constant_source: ConstantSource::Analytic,
        });
    }
    let c = if q == 0.0 { 0.0 } else { measured_triangle_constant(p)? };
    Ok(MeanBounds {
        lower: scale * c,
        upper: None,
        constant: c,
        constant_source: ConstantSource::Measured { reps: MEASURE_REPS, seed: MEASURE_SEED },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MixtureBounds {
    pub n3_over_d: f64,
    /// Expected number of resampled pairs, C(n,2)·q.
    pub resampled_edges: f64,
}

/// Right-hand sides of the total-variation and KL upper bounds, without the
/// unspecified multiplicative constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub p: f64,
    pub d: usize,
    pub q: f64,
    pub tv_weak_noise: f64,
    pub tv_weak_noise_valid: bool,
    pub kl_edgewise: f64,
    pub kl_edgewise_simple: f64,
    pub tv_structural_terms: [f64; 3],
    pub tv_structural_valid: bool,
    pub mixture_bounds: MixtureBounds,
}

pub fn tv_bound_report(n: usize, p: f64, d: usize, q: f64) -> Result<BoundReport> {
    ModelParams::new(n, p, d, q)?;
    let (nf, df) = (n as f64, d as f64);
    let pairs = nf * (nf - 1.0) / 2.0;
    Ok(BoundReport {
        n,
        p,
        d,
        q,
        tv_weak_noise: 0.5 * nf * q,
        tv_weak_noise_valid: q <= 0.5,
        kl_edgewise: pairs * q * q,
        kl_edgewise_simple: 0.5 * nf * nf * q * q,
        tv_structural_terms: [
            (nf * nf * q / (df * df)).sqrt(),
            (nf * nf * q / df).sqrt(),
            (nf.powi(3) * q * q / df).sqrt(),
        ],
        tv_structural_valid: d >= 2 * n,
        mixture_bounds: MixtureBounds { n3_over_d: nf.powi(3) / df, resampled_edges: pairs * q },
    })
}
