use crate::error::{Error, Result};
use crate::specfun::{integrate, integrate_breakpoints, log_gamma, QuadratureSpec};
use std::f64::consts::{FRAC_PI_2, PI};

const ABS_TOL: f64 = 1e-14;
const MAX_SUB: usize = 1 << 20;

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::domain(format!("angle density needs d ≥ 2, got {d}")));
    }
    Ok(())
}

/// log ζ with ζ = ∫₀^π sin^{d−2}θ dθ = √π Γ((d−1)/2) / Γ(d/2).
pub fn log_zeta(d: usize) -> Result<f64> {
    check_dim(d)?;
    let d = d as f64;
    Ok(0.5 * PI.ln() + log_gamma((d - 1.0) / 2.0)? - log_gamma(d / 2.0)?)
}

/// Angle densities for uniform points on S^{d−1}.
///
/// `h` is the density of the angle between two points on [0, π]; `g` is the
/// density of the angle between one point and a fixed 2-plane on [0, π/2].
#[derive(Debug, Clone, Copy)]
pub struct AngleDensity {
    d: usize,
    log_zeta: f64,
}

impl AngleDensity {
    pub fn new(d: usize) -> Result<Self> {
        Ok(Self { d, log_zeta: log_zeta(d)? })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn zeta(&self) -> f64 {
        self.log_zeta.exp()
    }

    /// h(θ) = sin^{d−2}θ / ζ
    pub fn h(&self, theta: f64) -> f64 {
        if self.d == 2 {
            return (-self.log_zeta).exp();
        }
        let s = theta.sin();
        if s <= 0.0 {
            return 0.0;
        }
        ((self.d as f64 - 2.0) * s.ln() - self.log_zeta).exp()
    }

    /// h(π/2 − u) = cos^{d−2}u / ζ
    fn h_centered(&self, u: f64) -> f64 {
        if self.d == 2 {
            return (-self.log_zeta).exp();
        }
        let c = u.cos();
        if c <= 0.0 {
            return 0.0;
        }
        ((self.d as f64 - 2.0) * c.ln() - self.log_zeta).exp()
    }

    /// g(φ) = (d−2) sin^{d−3}φ cos φ; needs d ≥ 3 (for d = 2 the point lies
    /// in the plane).
    pub fn g(&self, phi: f64) -> Result<f64> {
        if self.d < 3 {
            return Err(Error::domain("plane-angle density needs d ≥ 3"));
        }
        let dm = self.d as f64 - 2.0;
        if self.d == 3 {
            return Ok(phi.cos());
        }
        let s = phi.sin();
        if s <= 0.0 {
            return Ok(0.0);
        }
        Ok(dm * ((dm - 1.0) * s.ln()).exp() * phi.cos())
    }

    /// ∫₀^{π/2} w(π/2 − θ) h(θ) dθ, integrated in u = π/2 − θ with breakpoints
    /// on the 1/√d scale where the mass of h sits.
    pub fn integrate_upper_half<W: Fn(f64) -> f64>(&self, w: W) -> Result<f64> {
        let s = 1.0 / (self.d as f64).sqrt();
        let mut bps = vec![0.0];
        let mut x = s;
        while x < FRAC_PI_2 && bps.len() < 8 {
            bps.push(x);
            x *= 2.0;
        }
        bps.push(FRAC_PI_2);
        integrate_breakpoints(|u| w(u) * self.h_centered(u), &bps, ABS_TOL, MAX_SUB)
    }

    pub fn total_mass_h(&self) -> Result<f64> {
        Ok(2.0 * self.integrate_upper_half(|_| 1.0)?)
    }

    pub fn total_mass_g(&self) -> Result<f64> {
        if self.d < 3 {
            return Err(Error::domain("plane-angle density needs d ≥ 3"));
        }
        // mass of g sits near π/2 for large d; integrate in ψ = π/2 − φ
        let s = 1.0 / (self.d as f64).sqrt();
        let mut bps = vec![0.0];
        let mut x = s;
        while x < FRAC_PI_2 && bps.len() < 8 {
            bps.push(x);
            x *= 2.0;
        }
        bps.push(FRAC_PI_2);
        integrate_breakpoints(|psi| self.g(FRAC_PI_2 - psi).unwrap_or(0.0), &bps, ABS_TOL, MAX_SUB)
    }
}

/// γ = ∫₀^{π/2} (π/2 − θ)/(2π) h(θ) dθ
pub fn gamma_d(d: usize) -> Result<f64> {
    AngleDensity::new(d)?.integrate_upper_half(|u| u / (2.0 * PI))
}

/// η = ∫₀^{π/2} ((π/2 − θ)/(2π))² h(θ) dθ
pub fn eta_d(d: usize) -> Result<f64> {
    AngleDensity::new(d)?.integrate_upper_half(|u| (u / (2.0 * PI)).powi(2))
}

/// E[((π/2 − θ)/(2π))²] over the full angle range, which is 2η by the
/// symmetry of h about π/2. This is the quantity bracketed by
/// [1/(4π²d), 1/(16d)].
pub fn eta_second_moment(d: usize) -> Result<f64> {
    let dens = AngleDensity::new(d)?;
    let spec = QuadratureSpec::new(0.0, PI, ABS_TOL, MAX_SUB)?;
    let full = |t: f64| ((FRAC_PI_2 - t) / (2.0 * PI)).powi(2) * dens.h(t);
    if d <= 64 {
        return integrate(full, &spec);
    }
    Ok(2.0 * dens.integrate_upper_half(|u| (u / (2.0 * PI)).powi(2))?)
}

/// (2/ζ) ∫₀^{π/2} sin²θ cos^{d−2}θ dθ, which equals 1/d.
pub fn sin2_cos_identity(d: usize) -> Result<f64> {
    // cos^{d−2}θ / ζ is exactly h(π/2 − θ)
    let dens = AngleDensity::new(d)?;
    Ok(2.0 * dens.integrate_upper_half(|u| u.sin().powi(2))?)
}
