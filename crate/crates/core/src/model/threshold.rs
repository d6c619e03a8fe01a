use crate::error::{Error, Result};
use crate::specfun::{integrate, log_gamma, reg_inc_beta_inv, std_normal_quantile, std_normal_sf, QuadratureSpec};
use serde::Serialize;
use std::f64::consts::PI;

fn check_open_probability(p: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(format!("threshold undefined for p = {p}; need 0 < p < 1")));
    }
    Ok(())
}

/// t with P(⟨x₁, x₂⟩ ≥ t) = p for independent uniform points on S^{d−1}.
///
/// ⟨x₁, x₂⟩² ~ Beta(1/2, (d−1)/2) and the inner product is symmetric, so for
/// p ≤ 1/2 the threshold is √(I⁻¹(1/2, (d−1)/2; 1 − 2p)).
pub fn sphere_threshold(p: f64, d: usize) -> Result<f64> {
    check_open_probability(p)?;
    if d < 2 {
        return Err(Error::domain(format!("sphere threshold needs d ≥ 2, got {d}")));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    if p > 0.5 {
        return sphere_threshold(1.0 - p, d).map(|t| -t);
    }
    let x = reg_inc_beta_inv(0.5, (d as f64 - 1.0) / 2.0, 1.0 - 2.0 * p)?;
    Ok(x.sqrt())
}

/// P(⟨z₁, z₂⟩ ≥ u) for independent z_i ~ N(0, I_d).
///
/// Given z₁ the inner product is N(0, ‖z₁‖²), so the tail is
/// E_r[1 − Φ(u / r)] with r ~ χ(d); the expectation is integrated over the
/// chi density.
pub fn gauss_tail_probability(u: f64, d: usize, abs_tol: f64) -> Result<f64> {
    if d < 1 {
        return Err(Error::domain("gauss_tail_probability needs d ≥ 1"));
    }
    if !u.is_finite() {
        return Err(Error::domain(format!("non-finite threshold {u}")));
    }
    let df = d as f64;
    let ln_norm = (0.5 * df - 1.0) * std::f64::consts::LN_2 + log_gamma(0.5 * df)?;
    let mode = (df - 1.0).max(0.0).sqrt();
    // log density written relative to the mode, so the large terms cancel
    // analytically and the integrand is smooth to rounding level
    let log_peak = if d == 1 { -ln_norm } else { (df - 1.0) * mode.ln() - 0.5 * mode * mode - ln_norm };
    let density = |r: f64| {
        if d == 1 {
            return (log_peak - 0.5 * r * r).exp();
        }
        if r <= 0.0 {
            return 0.0;
        }
        let s = r - mode;
        (log_peak + (df - 1.0) * (s / mode).ln_1p() - 0.5 * s * (r + mode)).exp()
    };
    let tail = |r: f64| {
        if r <= 0.0 {
            return if u > 0.0 {
                0.0
            } else if u < 0.0 {
                1.0
            } else {
                0.5
            };
        }
        std_normal_sf(u / r).unwrap_or(0.0)
    };
    // χ(d) has standard deviation below 1/√2·1.2; 14 units either side of the
    // mode leaves < 1e-40 of mass outside
    let lo = (mode - 14.0).max(0.0);
    let hi = mode + 14.0;
    let spec = QuadratureSpec::new(lo, hi, abs_tol, 1 << 16)?;
    integrate(|r| density(r) * tail(r), &spec)
}

/// u with P(⟨z₁, z₂⟩ ≥ u) = p for independent standard-normal z_i in ℝ^d.
///
/// Bisection on the quadrature tail, so the result is deterministic.
pub fn gauss_threshold(p: f64, d: usize) -> Result<f64> {
    check_open_probability(p)?;
    if d < 1 {
        return Err(Error::domain("gauss threshold needs d ≥ 1"));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    if p > 0.5 {
        return gauss_threshold(1.0 - p, d).map(|u| -u);
    }
    const TOL: f64 = 1e-13;
    let scale = (d as f64).sqrt();
    let (mut lo, mut hi) = (0.0_f64, scale * (std_normal_quantile(1.0 - p)? + 1.0));
    let mut guard = 0;
    while gauss_tail_probability(hi, d, TOL)? > p {
        lo = hi;
        hi *= 2.0;
        guard += 1;
        if guard > 60 {
            return Err(Error::RootFinding(format!("gauss_threshold bracket failed at p={p}, d={d}")));
        }
    }
    while hi - lo > 1e-13 * scale.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if gauss_tail_probability(mid, d, TOL)? > p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Explicit constants bounding |t_{p,d}√d − t_p|·d from above, as derived in
/// the threshold-gap argument. Returned as (upper-side constant,
/// lower-side constant) for p ≤ 1/2; mirrored for p > 1/2.
pub fn delta_constants(p: f64) -> Result<(f64, f64)> {
    check_open_probability(p)?;
    let p = p.min(1.0 - p);
    let t_p = -std_normal_quantile(p)?;
    let t_half = -std_normal_quantile(p / 2.0)?;
    let root = (2.0 * PI).sqrt();
    let upper = 3.0 * (t_p + 2.0 * root * (0.5 * t_half * t_half).exp());
    let lower = 2.0 * (1.0 - 2.0 * p) * root * (0.5 * t_p * t_p).exp();
    Ok((upper, lower))
}

/// All thresholds of one (p, d) pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thresholds {
    /// Φ⁻¹(1 − p)
    pub t_p: f64,
    pub t_pd: f64,
    /// Only computed for the dot-product model.
    pub u_pd: Option<f64>,
    /// t_p − t_{p,d}·√d
    pub delta_pd: f64,
}

impl Thresholds {
    pub fn compute(p: f64, d: usize, with_gauss: bool) -> Result<Self> {
        check_open_probability(p)?;
        let t_p = -std_normal_quantile(p)?;
        let t_pd = sphere_threshold(p, d)?;
        let u_pd = if with_gauss { Some(gauss_threshold(p, d)?) } else { None };
        Ok(Self { t_p, t_pd, u_pd, delta_pd: t_p - t_pd * (d as f64).sqrt() })
    }
}
