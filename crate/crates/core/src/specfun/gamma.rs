use crate::error::{Error, Result};

/// log Γ(x) for x > 0, from the musl implementation in `libm`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::domain(format!("log_gamma: x = {x} must be positive and finite")));
    }
    Ok(libm::lgamma(x))
}

/// Γ(a) / Γ(b), formed in the log domain.
pub fn gamma_ratio(a: f64, b: f64) -> Result<f64> {
    Ok((log_gamma(a)? - log_gamma(b)?).exp())
}

/// ψ(x) = Γ′(x)/Γ(x) for x > 0: recurrence shift to x ≥ 8, then the
/// asymptotic expansion.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::domain(format!("digamma: x = {x} must be positive and finite")));
    }
    let mut acc = 0.0;
    let mut z = x;
    while z < 8.0 {
        acc -= 1.0 / z;
        z += 1.0;
    }
    let r2 = 1.0 / (z * z);
    let tail = r2
        * (1.0 / 12.0
            - r2 * (1.0 / 120.0
                - r2 * (1.0 / 252.0
                    - r2 * (1.0 / 240.0 - r2 * (1.0 / 132.0 - r2 * (691.0 / 32760.0 - r2 * (1.0 / 12.0)))))));
    Ok(acc + z.ln() - 0.5 / z - tail)
}
