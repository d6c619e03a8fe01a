use crate::error::{Error, Result};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

pub fn std_normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Φ(x). Backed by `erfc`, which keeps full relative precision in the lower tail.
pub fn std_normal_cdf(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("std_normal_cdf: non-finite input {x}")));
    }
    Ok(0.5 * libm::erfc(-x * FRAC_1_SQRT_2))
}

/// 1 − Φ(x), without cancellation for large x.
pub fn std_normal_sf(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("std_normal_sf: non-finite input {x}")));
    }
    Ok(0.5 * libm::erfc(x * FRAC_1_SQRT_2))
}

/// Φ⁻¹(u) for u in (0, 1).
///
/// Solves in the lower tail (u ≤ 1/2) and reflects, so Φ(x) = u is met to
/// relative precision there. Newton steps run inside a shrinking bracket and
/// fall back to bisection whenever a step leaves it.
pub fn std_normal_quantile(u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::domain(format!("std_normal_quantile: u = {u} not in (0,1)")));
    }
    if u == 0.5 {
        return Ok(0.0);
    }
    if u > 0.5 {
        return lower_tail_quantile(1.0 - u).map(|x| -x);
    }
    lower_tail_quantile(u)
}

fn lower_tail_quantile(u: f64) -> Result<f64> {
    // Φ(-38.5) underflows below the smallest positive f64.
    let (mut lo, mut hi) = (-38.5_f64, 0.0_f64);
    let mut x = initial_guess(u).clamp(lo, hi);
    for _ in 0..200 {
        let cdf = 0.5 * libm::erfc(-x * FRAC_1_SQRT_2);
        let resid = cdf - u;
        if resid == 0.0 {
            return Ok(x);
        }
        if resid > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let pdf = std_normal_pdf(x);
        let mut next = x - resid / pdf;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(1e-300) || hi - lo <= f64::EPSILON * lo.abs() {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

// Tail asymptotic start; Newton does the rest.
fn initial_guess(u: f64) -> f64 {
    if u > 0.3 {
        return (u - 0.5) * (2.0 * PI).sqrt();
    }
    let t = (-2.0 * u.ln()).sqrt();
    -(t - (2.515517 + 0.802853 * t + 0.010328 * t * t) / (1.0 + 1.432788 * t + 0.189269 * t * t + 0.001308 * t * t * t))
}
