use crate::error::{Error, Result};
use crate::specfun::digamma;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use std::f64::consts::LN_2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WishartLogDet {
    pub n: usize,
    pub d: usize,
    /// E[log det(ZZᵀ)] = Σ_{i=1}^{n} ψ((d − i + 1)/2) + n log 2
    pub mean_logdet: f64,
    /// E[−log det(ZZᵀ/d)] = n log d − mean_logdet
    pub mean_neg_logdet_normalized: f64,
    /// 4n/d + n²/d, valid for d ≥ 2n
    pub bound: f64,
    pub bound_applies: bool,
}

/// Exact log-determinant expectation of a Wishart(d, I_n) matrix ZZᵀ, Z an
/// n × d standard-normal matrix.
pub fn wishart_logdet_mean(n: usize, d: usize) -> Result<WishartLogDet> {
    if n < 1 {
        return Err(Error::domain("n must be at least 1"));
    }
    if d < n {
        return Err(Error::SingularWishart { n, d });
    }
    let mut mean = n as f64 * LN_2;
    for i in 1..=n {
        mean += digamma((d - i + 1) as f64 / 2.0)?;
    }
    let (nf, df) = (n as f64, d as f64);
    Ok(WishartLogDet {
        n,
        d,
        mean_logdet: mean,
        mean_neg_logdet_normalized: nf * df.ln() - mean,
        bound: 4.0 * nf / df + nf * nf / df,
        bound_applies: d >= 2 * n,
    })
}

/// log det(ZZᵀ) for one freshly drawn n × d standard-normal Z, via Cholesky.
pub fn sample_logdet<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<f64> {
    if d < n {
        return Err(Error::SingularWishart { n, d });
    }
    let z: Vec<f64> = (0..n * d).map(|_| rng.sample(StandardNormal)).collect();
    let mut w = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let v: f64 = z[i * d..(i + 1) * d].iter().zip(&z[j * d..(j + 1) * d]).map(|(a, b)| a * b).sum();
            w[i * n + j] = v;
        }
    }
    // in-place lower Cholesky
    let mut logdet = 0.0;
    for j in 0..n {
        let mut diag = w[j * n + j];
        for k in 0..j {
            diag -= w[j * n + k] * w[j * n + k];
        }
        if diag <= 0.0 {
            return Err(Error::domain("sampled Wishart matrix is not positive definite"));
        }
        let ljj = diag.sqrt();
        w[j * n + j] = ljj;
        logdet += 2.0 * ljj.ln();
        for i in j + 1..n {
            let mut v = w[i * n + j];
            for k in 0..j {
                v -= w[i * n + k] * w[j * n + k];
            }
            w[i * n + j] = v / ljj;
        }
    }
    Ok(logdet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{stream_rng, Stream};
    use crate::specfun::digamma;

    #[test]
    fn one_by_two_against_chi_square_draws() {
        // log det of a 1×1 Wishart(2) is log χ²(2); χ²(2) = −2 log U
        let exact = wishart_logdet_mean(1, 2).unwrap().mean_logdet;
        assert!((exact - (digamma(1.0).unwrap() + LN_2)).abs() < 1e-15);
        assert!((exact - 0.115_931_515_658_412_4).abs() < 1e-12);
        let mut rng = stream_rng(8, Stream::Latent);
        let reps = 1_000_000;
        let draws: Vec<f64> = (0..reps).map(|_| (-2.0 * (1.0 - rng.gen::<f64>()).ln()).ln()).collect();
        let mean = draws.iter().sum::<f64>() / reps as f64;
        let var = draws.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (reps - 1) as f64;
        assert!((mean - exact).abs() <= 3.0 * (var / reps as f64).sqrt(), "{mean} vs {exact}");
    }

    #[test]
    fn singular_case() {
        assert!(matches!(wishart_logdet_mean(5, 4), Err(Error::SingularWishart { .. })));
    }

    #[test]
    fn log_chi_square_lower_bound() {
        for k in [4usize, 40, 400] {
            let e = wishart_logdet_mean(1, k).unwrap().mean_logdet;
            let kf = k as f64;
            assert!((e - (digamma(kf / 2.0).unwrap() + LN_2)).abs() < 1e-14);
            assert!(e >= kf.ln() - 2.0 / kf);
        }
    }

    #[test]
    fn normalized_bound_at_8_64() {
        let w = wishart_logdet_mean(8, 64).unwrap();
        assert!(w.bound_applies);
        assert!((w.bound - 1.5).abs() < 1e-15);
        assert!(w.mean_neg_logdet_normalized <= w.bound);
        assert!(w.mean_neg_logdet_normalized > 0.0);
    }

    #[test]
    fn sampled_logdet_is_finite() {
        let mut rng = stream_rng(1, Stream::Latent);
        for _ in 0..10 {
            assert!(sample_logdet(4, 32, &mut rng).unwrap().is_finite());
        }
        assert!(sample_logdet(4, 3, &mut rng).is_err());
    }
}
