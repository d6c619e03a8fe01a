use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Sample mean with its plain standard error SD/√reps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub se: f64,
    pub reps: usize,
    pub variance: f64,
}

impl Estimate {
    /// Mean and unbiased variance, accumulated in slice order. Fewer than two
    /// values leave the variance and SE undefined (NaN).
    pub fn from_values(values: &[f64]) -> Self {
        let reps = values.len();
        if reps == 0 {
            return Self { mean: f64::NAN, se: f64::NAN, reps, variance: f64::NAN };
        }
        let mean = values.iter().sum::<f64>() / reps as f64;
        if reps < 2 {
            return Self { mean, se: f64::NAN, reps, variance: f64::NAN };
        }
        let variance = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (reps - 1) as f64;
        Self { mean, se: (variance / reps as f64).sqrt(), reps, variance }
    }

    /// |self − other| in units of the joint standard error.
    pub fn z_against(&self, other: &Estimate) -> f64 {
        (self.mean - other.mean).abs() / self.se.hypot(other.se)
    }
}

/// Evaluates `f(0), …, f(reps − 1)` on the current rayon pool and returns
/// them in index order.
pub fn replicate_values<F>(reps: usize, f: F) -> Vec<f64>
where
    F: Fn(u64) -> f64 + Sync + Send,
{
    (0..reps as u64).into_par_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_of_small_sample() {
        let e = Estimate::from_values(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(e.mean, 2.5);
        assert!((e.variance - 5.0 / 3.0).abs() < 1e-15);
        assert!((e.se - (5.0f64 / 12.0).sqrt()).abs() < 1e-15);
        assert!(Estimate::from_values(&[1.0]).se.is_nan());
    }

    #[test]
    fn order_is_preserved() {
        let v = replicate_values(1000, |r| r as f64);
        assert!(v.iter().enumerate().all(|(i, &x)| x == i as f64));
    }
}
