use super::gamma::log_gamma;
use crate::error::{Error, Result};

fn check_shape(a: f64, b: f64) -> Result<()> {
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(format!("beta shape parameters must be positive: a={a}, b={b}")));
    }
    Ok(())
}

fn ln_beta(a: f64, b: f64) -> Result<f64> {
    Ok(log_gamma(a)? + log_gamma(b)? - log_gamma(a + b)?)
}

/// Regularized incomplete beta function I_x(a, b).
///
/// Continued fraction (modified Lentz) on whichever of I_x(a,b) and
/// 1 − I_{1−x}(b,a) converges faster.
pub fn reg_inc_beta(a: f64, b: f64, x: f64) -> Result<f64> {
    check_shape(a, b)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("reg_inc_beta: x = {x} not in [0,1]")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    let ln_front = a * x.ln() + b * (-x).ln_1p() - ln_beta(a, b)?;
    if x < (a + 1.0) / (a + b + 2.0) {
        Ok((ln_front.exp() * beta_cf(a, b, x)? / a).clamp(0.0, 1.0))
    } else {
        Ok((1.0 - ln_front.exp() * beta_cf(b, a, 1.0 - x)? / b).clamp(0.0, 1.0))
    }
}

fn beta_cf(a: f64, b: f64, x: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let max_iter = 200 + (50.0 * (a.max(b)).sqrt()) as usize;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=max_iter {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            return Ok(h);
        }
    }
    Err(Error::RootFinding(format!("incomplete beta continued fraction stalled at a={a}, b={b}, x={x}")))
}

/// Inverse of x ↦ I_x(a, b).
///
/// Newton iterations on a bracket that starts at [0, 1] and shrinks with every
/// evaluation; a step that leaves the bracket is replaced by bisection.
pub fn reg_inc_beta_inv(a: f64, b: f64, u: f64) -> Result<f64> {
    check_shape(a, b)?;
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::domain(format!("reg_inc_beta_inv: u = {u} not in [0,1]")));
    }
    if u == 0.0 {
        return Ok(0.0);
    }
    if u == 1.0 {
        return Ok(1.0);
    }
    let ln_b = ln_beta(a, b)?;
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let mut x = (a / (a + b)).clamp(1e-300, 1.0 - 1e-16);
    for _ in 0..2000 {
        let f = reg_inc_beta(a, b, x)? - u;
        if f == 0.0 {
            return Ok(x);
        }
        if f > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let ln_pdf = (a - 1.0) * x.ln() + (b - 1.0) * (-x).ln_1p() - ln_b;
        let mut next = x - f / ln_pdf.exp();
        if !(next > lo && next < hi) || !next.is_finite() {
            // roots near 0 can be many decades down; step geometrically until bracketed
            next = if lo == 0.0 { 0.01 * hi } else { 0.5 * (lo + hi) };
            if next < f64::MIN_POSITIVE {
                return Ok(hi);
            }
        }
        if (next - x).abs() <= 2.0 * f64::EPSILON * x || hi - lo <= 2.0 * f64::EPSILON * hi {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::RootFinding(format!("reg_inc_beta_inv stalled at a={a}, b={b}, u={u}")))
}
