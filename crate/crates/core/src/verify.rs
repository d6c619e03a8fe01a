//! Runtime invariant checks, grouped into suites. Each check returns a
//! pass/fail result with a one-line detail string; nothing panics.

use crate::error::{Error, Result};
use crate::mc::{replicate_values, Estimate, Harness};
use crate::model::{
    delta_constants, derive_seed, sphere_threshold, stream_rng, AdjacencySample, Gram, GraphSampler, LatentKind,
    ModelParams, SamplerMode, Stream,
};
use crate::specfun::{
    digamma, integrate, log_gamma, reg_inc_beta, reg_inc_beta_inv, std_normal_cdf, std_normal_quantile, QuadratureSpec,
};
use crate::stats::{
    hamilton_cycles, q_scaling_difference, signed_pattern_estimate, signed_triangle_stat,
    subgraph_probability_estimate, triangle_histogram_enumeration, triangle_histogram_trace, Pattern, StatisticSpec,
};
use crate::theory::{
    eta_second_moment, gamma_d, half_moment_table, phase_classify, sample_logdet, sin2_cos_identity,
    wishart_logdet_mean, AngleDensity, PhaseLabel, PhasePoint,
};
use rand::Rng;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Specfun,
    Model,
    Stats,
    Theory,
    Mc,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Specfun, Suite::Model, Suite::Stats, Suite::Theory, Suite::Mc];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Specfun => "specfun",
            Suite::Model => "model",
            Suite::Stats => "stats",
            Suite::Theory => "theory",
            Suite::Mc => "mc",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::All].iter().chain(Suite::EACH.iter()).copied().find(|x| x.as_str() == s).ok_or_else(|| {
            Error::InvalidParams(format!("unknown suite '{s}' (all, specfun, model, stats, theory, mc)"))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(u64, &Harness) -> Result<(bool, String)>;

fn checks(suite: Suite) -> &'static [(&'static str, Check)] {
    match suite {
        Suite::Specfun => &[
            ("normal-quantile-round-trip", normal_round_trip),
            ("beta-monotone-and-inverse", beta_monotone_and_inverse),
            ("digamma-recurrence-and-bounds", digamma_recurrence_and_bounds),
            ("log-gamma-recurrence", log_gamma_recurrence),
            ("quadrature-closed-forms", quadrature_closed_forms),
        ],
        Suite::Model => &[
            ("edge-marginal", edge_marginal),
            ("soft-resample-agree", soft_resample_agree),
            ("threshold-decay", threshold_decay),
            ("determinism", sampler_determinism),
        ],
        Suite::Stats => &[
            ("trace-equals-enumeration", trace_equals_enumeration),
            ("q-scaling", q_scaling),
            ("er-moments", er_moments),
            ("hamilton-cycle-count", hamilton_count),
        ],
        Suite::Theory => &[
            ("densities-normalised", densities_normalised),
            ("gamma-eta-brackets", gamma_eta_brackets),
            ("sin2-identity", sin2_identity),
            ("half-moments-vs-mc", half_moments_vs_mc),
            ("wishart-logdet-vs-mc", wishart_vs_mc),
            ("phase-regions-disjoint", phase_disjoint),
        ],
        Suite::Mc => &[
            ("worker-independence", worker_independence),
            ("variance-scaling", variance_scaling),
            ("power-monotone-in-q", power_monotone),
        ],
        Suite::All => &[],
    }
}

/// Runs one suite (or all of them) and returns one result per check.
pub fn run(suite: Suite, seed: u64, harness: &Harness) -> Vec<CheckResult> {
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut out = Vec::new();
    for s in suites {
        for (i, &(name, check)) in checks(s).iter().enumerate() {
            let (passed, detail) = match check(derive_seed(seed, &[s as u64, i as u64]), harness) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            out.push(CheckResult { suite: s.as_str(), name, passed, detail });
        }
    }
    out
}

fn log_grid(lo: f64, hi: f64, points: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..points).map(move |i| (a + (b - a) * i as f64 / (points - 1) as f64).exp())
}

fn log_dims(hi: usize) -> Vec<usize> {
    let mut v: Vec<usize> = log_grid(2.0, hi as f64, 40).map(|x| x.round() as usize).collect();
    v.dedup();
    v
}

fn normal_round_trip(_: u64, _: &Harness) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let u = 1e-6 + (1.0 - 2e-6) * i as f64 / 999.0;
        worst = worst.max((std_normal_cdf(std_normal_quantile(u)?)? - u).abs());
    }
    Ok((worst <= 1e-8, format!("max |Φ(Φ⁻¹(u)) − u| = {worst:.2e}")))
}

fn beta_monotone_and_inverse(_: u64, _: &Harness) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    let mut monotone = true;
    for &(a, b) in &[(0.5, 7.5), (2.5, 7.0), (1.0, 1.0), (0.5, 511.5), (30.0, 3.0)] {
        let mut prev = 0.0;
        for i in 0..=200 {
            let x = i as f64 / 200.0;
            let v = reg_inc_beta(a, b, x)?;
            monotone &= v >= prev;
            prev = v;
        }
        for i in 1..100 {
            let u = i as f64 / 100.0;
            worst = worst.max((reg_inc_beta(a, b, reg_inc_beta_inv(a, b, u)?)? - u).abs());
        }
    }
    Ok((monotone && worst <= 1e-10, format!("monotone = {monotone}, max round-trip error {worst:.2e}")))
}

fn digamma_recurrence_and_bounds(_: u64, _: &Harness) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    let mut bounds = true;
    for x in log_grid(0.5, 1e6, 200) {
        let psi = digamma(x)?;
        worst = worst.max((digamma(x + 1.0)? - psi - 1.0 / x).abs());
        bounds &= x.ln() - 1.0 / x <= psi && psi <= x.ln() - 0.5 / x;
    }
    Ok((bounds && worst <= 1e-12, format!("bounds hold = {bounds}, max recurrence error {worst:.2e}")))
}

fn log_gamma_recurrence(_: u64, _: &Harness) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for x in log_grid(0.1, 1e6, 200) {
        let lhs = log_gamma(x + 1.0)?;
        let rhs = log_gamma(x)? + x.ln();
        worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1.0));
    }
    Ok((worst <= 1e-12, format!("max relative error of log Γ(x+1) = log x + log Γ(x): {worst:.2e}")))
}

fn quadrature_closed_forms(_: u64, _: &Harness) -> Result<(bool, String)> {
    let tol = 1e-10;
    let mut worst = 0.0f64;
    for d in 3..=64usize {
        let e = (d - 2) as i32;
        let a = integrate(|t: f64| t.sin() * t.cos().powi(e), &QuadratureSpec::new(0.0, PI / 2.0, tol, 1 << 16)?)?;
        worst = worst.max((a - 1.0 / (d as f64 - 1.0)).abs());
        let b = integrate(|t: f64| t.sin().powi(e), &QuadratureSpec::new(0.0, PI, tol, 1 << 16)?)?;
        let exact = (0.5 * PI.ln() + log_gamma((d as f64 - 1.0) / 2.0)? - log_gamma(d as f64 / 2.0)?).exp();
        worst = worst.max((b - exact).abs());
    }
    Ok((worst <= tol, format!("max error over d = 3..64: {worst:.2e}")))
}

fn edge_marginal(seed: u64, _: &Harness) -> Result<(bool, String)> {
    let params = ModelParams::new(20, 0.3, 16, 0.5)?;
    let mut ok = true;
    let mut parts = Vec::new();
    for (i, mode) in SamplerMode::ALL.iter().enumerate() {
        let s = GraphSampler::new(params, *mode)?;
        let pairs = (params.n * (params.n - 1) / 2) as f64;
        let v = replicate_values(4000, |r| s.sample(derive_seed(seed, &[i as u64, r])).edge_count() as f64 / pairs);
        let e = Estimate::from_values(&v);
        let z = (e.mean - params.p).abs() / e.se;
        ok &= z <= 3.0;
        parts.push(format!("{mode}: z = {z:.2}"));
    }
    Ok((ok, parts.join(", ")))
}

fn soft_resample_agree(seed: u64, _: &Harness) -> Result<(bool, String)> {
    let params = ModelParams::new(3, 0.3, 4, 0.6)?;
    let soft = GraphSampler::new(params, SamplerMode::SoftSphere)?;
    let resample = GraphSampler::new(params, SamplerMode::SoftSphereResample)?;
    let mut rng = stream_rng(seed, Stream::Latent);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let gram = Gram::wishart(3, 4, LatentKind::UnitSphere, &mut rng)?;
        for mask in 0u32..8 {
            let prob = |s: &GraphSampler| -> f64 {
                gram.values()
                    .iter()
                    .enumerate()
                    .map(|(k, &x)| {
                        let pe = s.edge_probability(x);
                        if mask >> k & 1 == 1 {
                            pe
                        } else {
                            1.0 - pe
                        }
                    })
                    .product()
            };
            worst = worst.max((prob(&soft) - prob(&resample)).abs());
        }
    }
    Ok((worst == 0.0, format!("max difference over 8 graph laws × 200 latents: {worst:e}")))
}

fn threshold_decay(_: u64, _: &Harness) -> Result<(bool, String)> {
    let p = 0.3;
    let t_p = std_normal_quantile(1.0 - p)?;
    let (upper, _) = delta_constants(p)?;
    let mut max = 0.0f64;
    for d in (3..=12).map(|k| 1usize << k) {
        let t = sphere_threshold(p, d)?;
        max = max.max(d as f64 * (t * (d as f64).sqrt() - t_p).abs());
    }
    Ok((max.is_finite() && max <= upper, format!("max d·|t√d − t_p| = {max:.4} (constant {upper:.4})")))
}

fn sampler_determinism(seed: u64, _: &Harness) -> Result<(bool, String)> {
    let params = ModelParams::new(25, 0.4, 10, 0.7)?;
    let mut ok = true;
    for mode in SamplerMode::ALL {
        let s = GraphSampler::new(params, mode)?;
        ok &= s.sample(seed) == s.sample(seed);
    }
    Ok((ok, format!("identical samples for all {} modes = {ok}", SamplerMode::ALL.len())))
}

fn random_graph(n: usize, p: f64, seed: u64) -> Result<AdjacencySample> {
    let mut rng = stream_rng(seed, Stream::Edges);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    AdjacencySample::from_edges(n, p, SamplerMode::Er, seed, &edges)
}

fn trace_equals_enumeration(seed: u64, _: &Harness) -> Result<(bool, String)> {
    let mut mismatches = 0;
    for r in 0..500u64 {
        let s = derive_seed(seed, &[r]);
        let n = 1 + (s % 12) as usize;
        let p = 0.05 + 0.9 * ((s >> 8) % 1000) as f64 / 1000.0;
        let g = random_graph(n, p, s)?;
        let a = triangle_histogram_trace(&g).signed_sum(p);
        let b = triangle_histogram_enumeration(&g).signed_sum(p);
        if a.to_bits() != b.to_bits() {
            mismatches += 1;
        }
    }
    Ok((mismatches == 0, format!("{mismatches} mismatches over 500 graphs")))
}

fn q_scaling(seed: u64, _: &Harness) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (i, pattern) in [Pattern::triangle(), Pattern::cycle(4)?].iter().enumerate() {
        let e = q_scaling_difference(pattern, 0.3, 32, 0.5, 200_000, derive_seed(seed, &[i as u64]))?;
        let z = e.mean.abs() / e.se;
        ok &= z <= 3.0;
        parts.push(format!("|F| = {}: z = {z:.2}", pattern.edges().len()));
    }
    Ok((ok, parts.join(", ")))
}

fn er_moments(seed: u64, _: &Harness) -> Result<(bool, String)> {
    let (n, p) = (10, 0.3);
    let s = GraphSampler::new(ModelParams::new(n, p, 1, 0.0)?, SamplerMode::Er)?;
    let v = replicate_values(100_000, |r| signed_triangle_stat(&s.sample(derive_seed(seed, &[r])), p).value);
    let e = Estimate::from_values(&v);
    let target = 120.0 * (p * (1.0 - p)).powi(3);
    let rel = (e.variance / target - 1.0).abs();
    let ok = e.mean.abs() <= 3.0 * e.se && rel <= 0.05;
    Ok((ok, format!("mean {:.3e} (SE {:.1e}), variance off by {:.2}%", e.mean, e.se, 100.0 * rel)))
}

fn hamilton_count(_: u64, _: &Harness) -> Result<(bool, String)> {
    let mut ok = true;
    for k in 3..=crate::stats::MAX_ORDER {
        let expect: usize = (1..k).product::<usize>() / 2;
        ok &= hamilton_cycles(k).len() == expect;
    }
    Ok((ok, format!("(k−1)!/2 cycles for k = 3..={}", crate::stats::MAX_ORDER)))
}

fn densities_normalised(_: u64, _: &Harness) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for d in 2..=128 {
        let a = AngleDensity::new(d)?;
        worst = worst.max((a.total_mass_h()? - 1.0).abs());
        if d >= 3 {
            worst = worst.max((a.total_mass_g()? - 1.0).abs());
        }
    }
    Ok((worst <= 1e-9, format!("max |mass − 1| = {worst:.2e}")))
}

fn gamma_eta_brackets(_: u64, _: &Harness) -> Result<(bool, String)> {
    let (g_lo, g_hi) = (1.0 / (2.0 * PI * (2.0 * PI).sqrt()), 1.0 / (4.0 * PI.sqrt()));
    let (e_lo, e_hi) = (1.0 / (4.0 * PI * PI), 1.0 / 16.0);
    let mut ok = true;
    let mut prev = (f64::INFINITY, f64::INFINITY);
    let mut bad = Vec::new();
    for d in log_dims(4096) {
        let gs = gamma_d(d)? * (d as f64).sqrt();
        let es = eta_second_moment(d)? * d as f64;
        let inside = (g_lo..=g_hi).contains(&gs) && (e_lo..=e_hi).contains(&es);
        let monotone = gs <= prev.0 * (1.0 + 1e-9) && es <= prev.1 * (1.0 + 1e-9);
        if !(inside && monotone) {
            ok = false;
            bad.push(d);
        }
        prev = (gs, es);
    }
    let detail = if ok {
        "γ√d and 2η·d inside their brackets and nonincreasing on d = 2..4096".to_string()
    } else {
        format!("violations at d = {bad:?}")
    };
    Ok((ok, detail))
}

fn sin2_identity(_: u64, _: &Harness) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for d in 3..=64 {
        worst = worst.max((sin2_cos_identity(d)? - 1.0 / d as f64).abs());
    }
    Ok((worst <= 1e-10, format!("max error {worst:.2e}")))
}

fn within_3se(e: &Estimate, target: f64) -> bool {
    (e.mean - target).abs() <= 3.0 * e.se
}

fn half_moments_vs_mc(seed: u64, _: &Harness) -> Result<(bool, String)> {
    let reps = 200_000;
    let quad = Pattern::new(4, vec![(0, 2), (1, 2), (0, 3), (1, 3)])?;
    let house = Pattern::new(4, vec![(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])?;
    let mut ok = true;
    let mut parts = Vec::new();
    for (i, d) in [16usize, 64].into_iter().enumerate() {
        let t = half_moment_table(d)?;
        let s = |j: u64| derive_seed(seed, &[i as u64, j]);
        let kind = LatentKind::UnitSphere;
        let tri = subgraph_probability_estimate(kind, 0.5, d, &Pattern::triangle(), reps, s(0))?;
        let qp = subgraph_probability_estimate(kind, 0.5, d, &quad, reps, s(1))?;
        let ho = subgraph_probability_estimate(kind, 0.5, d, &house, reps, s(2))?;
        let hard = GraphSampler::new(ModelParams::new(4, 0.5, d, 1.0)?, SamplerMode::HardSphere)?;
        let kappa = signed_pattern_estimate(&hard, &Pattern::cycle(4)?, reps, s(3))?;
        let here = within_3se(&tri, t.triangle_prob)
            && within_3se(&qp, t.quad_path_prob)
            && within_3se(&ho, t.house_prob)
            && within_3se(&kappa, t.quadrilateral_mean);
        ok &= here;
        parts.push(format!("d = {d}: {}", if here { "ok" } else { "off" }));
    }
    Ok((ok, parts.join(", ")))
}

fn wishart_vs_mc(seed: u64, _: &Harness) -> Result<(bool, String)> {
    let (n, d) = (4, 32);
    let exact = wishart_logdet_mean(n, d)?.mean_logdet;
    let v = replicate_values(10_000, |r| {
        sample_logdet(n, d, &mut stream_rng(derive_seed(seed, &[r]), Stream::Latent)).expect("d ≥ n")
    });
    let e = Estimate::from_values(&v);
    let z = (e.mean - exact).abs() / e.se;
    Ok((z <= 3.0, format!("exact {exact:.6}, MC {:.6} (z = {z:.2})", e.mean)))
}

fn phase_disjoint(_: u64, _: &Harness) -> Result<(bool, String)> {
    // region tests in exact integer hundredths
    let mut ok = true;
    for i in 1..=500i64 {
        for j in 1..=200i64 {
            let impossible = j > 100 || i + 2 * j > 300;
            let possible = i + 6 * j < 300;
            let label = phase_classify(PhasePoint::new(i as f64 / 100.0, j as f64 / 100.0)?);
            let expect = match (impossible, possible) {
                (true, false) => PhaseLabel::Impossible,
                (false, true) => PhaseLabel::Possible,
                (false, false) => PhaseLabel::Unknown,
                (true, true) => {
                    ok = false;
                    continue;
                }
            };
            ok &= label == expect;
        }
    }
    Ok((ok, "100 000 grid points on (0,5]×(0,2], step 0.01".into()))
}

fn worker_independence(seed: u64, harness: &Harness) -> Result<(bool, String)> {
    let params = ModelParams::new(30, 0.5, 20, 0.8)?;
    let mode = SamplerMode::SoftSphere;
    let one = Harness::new(1)?.estimate_statistic(params, mode, StatisticSpec::TRIANGLE, 2000, seed)?;
    let many = Harness::new(4)?.estimate_statistic(params, mode, StatisticSpec::TRIANGLE, 2000, seed)?;
    let here = harness.estimate_statistic(params, mode, StatisticSpec::TRIANGLE, 2000, seed)?;
    let ok = one.mean.to_bits() == many.mean.to_bits()
        && one.se.to_bits() == many.se.to_bits()
        && here.mean.to_bits() == one.mean.to_bits();
    Ok((ok, format!("1, 4 and {} workers agree bit-for-bit = {ok}", harness.workers())))
}

fn variance_scaling(seed: u64, harness: &Harness) -> Result<(bool, String)> {
    let (n, q) = (40usize, 0.5f64);
    let mut ratios = Vec::new();
    for d in [16usize, 64, 256] {
        let params = ModelParams::new(n, 0.5, d, q)?;
        let e = harness.estimate_statistic(
            params,
            SamplerMode::SoftSphere,
            StatisticSpec::TRIANGLE,
            3000,
            seed ^ d as u64,
        )?;
        let nf = n as f64;
        ratios.push(e.variance / (nf.powi(3) + nf.powi(4) * q.powi(4) / d as f64));
    }
    let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
    Ok((max / min <= 4.0, format!("Var/(n³ + n⁴q⁴/d) ratios {ratios:.4?}")))
}

fn power_monotone(seed: u64, harness: &Harness) -> Result<(bool, String)> {
    let reps = 200;
    let mut powers = Vec::new();
    for q in [0.2, 0.4, 0.6, 0.8, 1.0] {
        let params = ModelParams::new(100, 0.5, 100, q)?;
        let rec = harness.detection_experiment(
            params,
            SamplerMode::SoftSphere,
            StatisticSpec::TRIANGLE,
            reps,
            seed,
            crate::mc::TestKind::CalibratedQuantile,
        )?;
        powers.push(rec.power);
    }
    let mut ok = true;
    for w in powers.windows(2) {
        let se = (w[0] * (1.0 - w[0]) / reps as f64 + w[1] * (1.0 - w[1]) / reps as f64).sqrt();
        ok &= w[1] >= w[0] - 2.0 * se;
    }
    Ok((ok, format!("power along q = 0.2..1.0: {powers:.3?}")))
}
