use crate::error::{Error, Result};

/// Integration domain and error budget for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub lower: f64,
    pub upper: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadratureSpec {
    pub fn new(lower: f64, upper: f64, abs_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite()) || lower > upper {
            return Err(Error::domain(format!("quadrature bounds [{lower}, {upper}] invalid")));
        }
        if abs_tol.is_nan() || abs_tol <= 0.0 {
            return Err(Error::domain(format!("quadrature abs_tol {abs_tol} must be positive")));
        }
        if max_subdivisions == 0 {
            return Err(Error::domain("max_subdivisions must be positive"));
        }
        Ok(Self { lower, upper, abs_tol, max_subdivisions })
    }
}

// Uniform panels before adaptation starts. A single Simpson panel over a sharply
// peaked integrand can sample only zeros and "converge" to 0.
const INITIAL_PANELS: usize = 16;

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

/// Adaptive Simpson quadrature with interval bisection.
///
/// Each panel is accepted once |S₂ − S₁| ≤ 15·tol·(width/total); the accepted
/// value includes the Richardson correction. When the subdivision budget runs
/// out, the remaining panels are accepted as-is and a
/// [`Error::Convergence`] carrying the estimate and the summed residual is
/// returned.
pub fn integrate<F: Fn(f64) -> f64>(f: F, spec: &QuadratureSpec) -> Result<f64> {
    let QuadratureSpec { lower, upper, abs_tol, max_subdivisions } = *spec;
    if lower == upper {
        return Ok(0.0);
    }
    let total = upper - lower;
    let h = total / INITIAL_PANELS as f64;
    let mut stack: Vec<Panel> = (0..INITIAL_PANELS)
        .rev()
        .map(|i| {
            let a = lower + h * i as f64;
            let b = if i + 1 == INITIAL_PANELS { upper } else { lower + h * (i + 1) as f64 };
            make_panel(&f, a, b, f(a), f(b))
        })
        .collect();

    let mut sum = 0.0;
    let mut residual = 0.0;
    let mut splits = 0usize;
    let mut exhausted = false;
    while let Some(p) = stack.pop() {
        let m = 0.5 * (p.a + p.b);
        let left = make_panel(&f, p.a, m, p.fa, p.fm);
        let right = make_panel(&f, m, p.b, p.fm, p.fb);
        let refined = left.whole + right.whole;
        let err = (refined - p.whole).abs() / 15.0;
        let local_tol = abs_tol * (p.b - p.a) / total;
        let tiny = (p.b - p.a) <= 64.0 * f64::EPSILON * (p.a.abs().max(p.b.abs()).max(1.0));
        if !refined.is_finite() {
            return Err(Error::domain("integrand is not finite on the domain"));
        }
        if err <= local_tol || tiny || exhausted {
            sum += refined + (refined - p.whole) / 15.0;
            if !(err <= local_tol || tiny) {
                residual += err;
            }
            continue;
        }
        if splits >= max_subdivisions {
            exhausted = true;
            sum += refined + (refined - p.whole) / 15.0;
            residual += err;
            continue;
        }
        splits += 1;
        stack.push(right);
        stack.push(left);
    }
    if exhausted {
        return Err(Error::Convergence { estimate: sum, residual });
    }
    Ok(sum)
}

fn make_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fb: f64) -> Panel {
    let m = 0.5 * (a + b);
    let fm = f(m);
    Panel { a, b, fa, fm, fb, whole: (b - a) / 6.0 * (fa + 4.0 * fm + fb) }
}

/// Integrates piecewise over consecutive breakpoints, splitting `abs_tol`
/// evenly across pieces. Use for integrands whose mass sits in a known
/// narrow window.
pub fn integrate_breakpoints<F: Fn(f64) -> f64>(
    f: F,
    breakpoints: &[f64],
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<f64> {
    if breakpoints.len() < 2 {
        return Err(Error::domain("need at least two breakpoints"));
    }
    let pieces = (breakpoints.len() - 1) as f64;
    let mut total = 0.0;
    for w in breakpoints.windows(2) {
        let spec = QuadratureSpec::new(w[0], w[1], abs_tol / pieces, max_subdivisions)?;
        total += integrate(&f, &spec)?;
    }
    Ok(total)
}
