use super::angle::{eta_d, gamma_d};
use crate::error::Result;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    fn shift(self, by: f64) -> Self {
        Self { lower: self.lower + by, upper: self.upper + by }
    }
}

/// Pattern probabilities of the hard sphere graph at p = 1/2, all expressed
/// through γ and η.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfMomentTable {
    pub d: usize,
    pub gamma: f64,
    pub eta: f64,
    /// P(triangle) = 1/8 + γ
    pub triangle_prob: f64,
    /// E[a₁₃a₂₃a₁₄a₂₄] = 1/16 + 2η
    pub quad_path_prob: f64,
    /// E[a₁₂a₁₃a₂₃a₁₄a₂₄] = 1/32 + γ/2 + η
    pub house_prob: f64,
    /// E[κ] of one signed 4-cycle = 2η
    pub quadrilateral_mean: f64,
    /// Bracket on E[∏_{i<j≤4} a_ij], the 4-clique probability.
    pub four_clique_prob: Interval,
    /// Q₁ = four_clique_prob − 1/64
    pub q1: Interval,
    /// E[τ_[4]] = Q₁ − γ/2 − 3η/2, from the bracket on Q₁.
    pub signed_quadruple_mean: Interval,
}

pub fn half_moment_table(d: usize) -> Result<HalfMomentTable> {
    let gamma = gamma_d(d)?;
    let eta = eta_d(d)?;
    let dd = d as f64;
    let base = 0.5 * gamma + 0.5 * eta;
    let q1 = Interval { lower: base + 1.0 / (16.0 * PI * PI * dd), upper: base + 1.0 / (8.0 * PI * dd) };
    Ok(HalfMomentTable {
        d,
        gamma,
        eta,
        triangle_prob: 0.125 + gamma,
        quad_path_prob: 1.0 / 16.0 + 2.0 * eta,
        house_prob: 1.0 / 32.0 + 0.5 * gamma + eta,
        quadrilateral_mean: 2.0 * eta,
        four_clique_prob: q1.shift(1.0 / 64.0),
        q1,
        signed_quadruple_mean: q1.shift(-0.5 * gamma - 1.5 * eta),
    })
}
