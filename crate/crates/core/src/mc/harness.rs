use super::config::{ExperimentConfig, GridPoint};
use super::estimate::Estimate;
use crate::error::{Error, Result};
use crate::model::{derive_seed, GraphSampler, ModelParams, SamplerMode};
use crate::stats::{StatisticKind, StatisticSpec};
use crate::theory::{phase_classify, PhaseLabel, PhasePoint};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;
use std::time::Instant;

/// Smallest replicate count accepted by [`Harness::detection_experiment`].
pub const MIN_DETECTION_REPS: usize = 100;
/// Nominal level α of the calibrated-quantile test.
pub const CALIBRATION_LEVEL: f64 = 0.05;

// Seed-path tags for the replicate batches of one detection experiment.
const PILOT: u64 = 1;
const ALTERNATIVE: u64 = 2;
const NULL: u64 = 3;
const CALIBRATION: u64 = 4;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestKind {
    /// Reject when the statistic is at least half its alternative mean Δ,
    /// with Δ estimated from an independent pilot batch.
    #[default]
    HalfMeanThreshold,
    /// Reject above the empirical (1 − α) quantile of the null statistic.
    CalibratedQuantile,
}

impl TestKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TestKind::HalfMeanThreshold => "half-mean-threshold",
            TestKind::CalibratedQuantile => "calibrated-quantile",
        }
    }
}

impl fmt::Display for TestKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TestKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "half-mean-threshold" | "half-mean" => Ok(TestKind::HalfMeanThreshold),
            "calibrated-quantile" | "calibrated" => Ok(TestKind::CalibratedQuantile),
            _ => Err(Error::params(format!("unknown test '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecordStatus {
    Ok,
    /// The pilot mean Δ was not positive; power and type-1 rate are still
    /// reported against the threshold Δ/2.
    Inconclusive,
    /// p ∈ {0, 1} or fewer than k vertices: the statistic is identically 0.
    Degenerate,
    Failed,
}

impl RecordStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RecordStatus::Ok => "ok",
            RecordStatus::Inconclusive => "inconclusive",
            RecordStatus::Degenerate => "degenerate",
            RecordStatus::Failed => "failed",
        }
    }
}

/// Outcome of one detection experiment. `stat_mean` and `stat_se` describe
/// the statistic under the alternative.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub index: usize,
    pub n: usize,
    pub p: f64,
    pub d: usize,
    pub q: f64,
    pub mode: SamplerMode,
    pub stat_kind: StatisticKind,
    pub k: usize,
    pub test: TestKind,
    pub reps: usize,
    pub seed: u64,
    pub stat_mean: f64,
    pub stat_se: f64,
    pub power: f64,
    pub type1: f64,
    pub threshold: f64,
    pub phase_label: Option<PhaseLabel>,
    pub wallclock_ms: u64,
    pub status: RecordStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl ExperimentRecord {
    #[allow(clippy::too_many_arguments)]
    fn blank(
        index: usize,
        pt: &GridPoint,
        spec: StatisticSpec,
        test: TestKind,
        reps: usize,
        seed: u64,
        status: RecordStatus,
    ) -> Self {
        Self {
            index,
            n: pt.n,
            p: pt.p,
            d: pt.d,
            q: pt.q,
            mode: pt.mode,
            stat_kind: spec.kind,
            k: spec.k,
            test,
            reps,
            seed,
            stat_mean: f64::NAN,
            stat_se: f64::NAN,
            power: f64::NAN,
            type1: f64::NAN,
            threshold: f64::NAN,
            phase_label: PhasePoint::from_model(pt.n, pt.d, pt.q).map(phase_classify),
            wallclock_ms: 0,
            status,
            message: None,
        }
    }
}

/// Worker count from `RGG_WORKERS`, else the available parallelism.
pub fn default_workers() -> usize {
    std::env::var("RGG_WORKERS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

/// A dedicated thread pool that runs replicates.
pub struct Harness {
    pool: rayon::ThreadPool,
    workers: usize,
}

impl fmt::Debug for Harness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Harness").field("workers", &self.workers).finish()
    }
}

impl Harness {
    pub fn new(workers: usize) -> Result<Self> {
        if workers == 0 {
            return Err(Error::params("workers must be positive"));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::domain(format!("thread pool: {e}")))?;
        Ok(Self { pool, workers })
    }

    pub fn from_env() -> Result<Self> {
        Self::new(default_workers())
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    /// Runs `f` inside this harness's pool.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        self.pool.install(f)
    }

    fn statistic_values(
        &self,
        sampler: &GraphSampler,
        spec: StatisticSpec,
        reps: usize,
        master_seed: u64,
        tag: Option<u64>,
    ) -> Result<Vec<f64>> {
        let p = sampler.params().p;
        self.pool.install(|| {
            (0..reps as u64)
                .into_par_iter()
                .map(|r| {
                    let seed = match tag {
                        Some(t) => derive_seed(master_seed, &[t, r]),
                        None => derive_seed(master_seed, &[r]),
                    };
                    spec.compute(&sampler.sample(seed), p).map(|v| v.value)
                })
                .collect()
        })
    }

    /// Mean and SE of the statistic over `reps` independent graphs.
    pub fn estimate_statistic(
        &self,
        params: ModelParams,
        mode: SamplerMode,
        spec: StatisticSpec,
        reps: usize,
        master_seed: u64,
    ) -> Result<Estimate> {
        if reps == 0 {
            return Err(Error::params("reps must be positive"));
        }
        let spec = StatisticSpec::new(spec.kind, spec.k)?;
        let sampler = GraphSampler::new(params, mode)?;
        Ok(Estimate::from_values(&self.statistic_values(&sampler, spec, reps, master_seed, None)?))
    }

    /// Tests `mode` at `params` (alternative) against G(n, p) (null) with
    /// `reps` evaluation graphs from each. The record's `wallclock_ms` is left
    /// at 0.
    pub fn detection_experiment(
        &self,
        params: ModelParams,
        mode: SamplerMode,
        spec: StatisticSpec,
        reps: usize,
        master_seed: u64,
        test: TestKind,
    ) -> Result<ExperimentRecord> {
        if reps < MIN_DETECTION_REPS {
            return Err(Error::params(format!("detection needs reps ≥ {MIN_DETECTION_REPS}, got {reps}")));
        }
        let spec = StatisticSpec::new(spec.kind, spec.k)?;
        let alt = GraphSampler::new(params, mode)?;
        let null = GraphSampler::new(params, SamplerMode::Er)?;
        let pt = GridPoint { n: params.n, p: params.p, d: params.d, q: params.q, mode };
        let mut rec = ExperimentRecord::blank(0, &pt, spec, test, reps, master_seed, RecordStatus::Ok);

        if params.is_degenerate() || params.n < spec.k {
            rec.status = RecordStatus::Degenerate;
            rec.stat_mean = 0.0;
            rec.stat_se = 0.0;
            return Ok(rec);
        }

        let h1 = self.statistic_values(&alt, spec, reps, master_seed, Some(ALTERNATIVE))?;
        let h0 = self.statistic_values(&null, spec, reps, master_seed, Some(NULL))?;
        let threshold = match test {
            TestKind::HalfMeanThreshold => {
                let pilot = self.statistic_values(&alt, spec, reps / 2, master_seed, Some(PILOT))?;
                let delta = Estimate::from_values(&pilot).mean;
                if delta <= 0.0 {
                    rec.status = RecordStatus::Inconclusive;
                    rec.message = Some(format!("pilot mean {delta:e} is not positive"));
                }
                delta / 2.0
            }
            TestKind::CalibratedQuantile => {
                let mut cal = self.statistic_values(&null, spec, reps, master_seed, Some(CALIBRATION))?;
                cal.sort_by(f64::total_cmp);
                let idx = ((1.0 - CALIBRATION_LEVEL) * cal.len() as f64).floor() as usize;
                cal[idx.min(cal.len() - 1)]
            }
        };
        let rate = |v: &[f64]| v.iter().filter(|&&x| x >= threshold).count() as f64 / v.len() as f64;
        let est = Estimate::from_values(&h1);
        rec.stat_mean = est.mean;
        rec.stat_se = est.se;
        rec.threshold = threshold;
        rec.power = rate(&h1);
        rec.type1 = rate(&h0);
        Ok(rec)
    }

    /// Runs every grid point from `config.start_index` on, in grid order,
    /// handing each record to `sink` as soon as it is complete. A point that
    /// errors or panics yields a record with status `failed` and the sweep
    /// moves on. Point i uses the seed `derive_seed(master_seed, [i])`, so a
    /// resumed sweep reproduces the records of a full one.
    pub fn sweep(
        &self,
        config: &ExperimentConfig,
        mut sink: impl FnMut(&ExperimentRecord) -> Result<()>,
    ) -> Result<Vec<ExperimentRecord>> {
        config.validate()?;
        if config.reps < MIN_DETECTION_REPS {
            return Err(Error::params(format!("sweeps need reps ≥ {MIN_DETECTION_REPS}")));
        }
        let points = config.points()?;
        let mut out = Vec::with_capacity(points.len() - config.start_index);
        for (index, pt) in points.iter().enumerate().skip(config.start_index) {
            let seed = derive_seed(config.master_seed, &[index as u64]);
            let start = Instant::now();
            let outcome = catch_unwind(AssertUnwindSafe(|| {
                pt.params().and_then(|params| {
                    self.detection_experiment(params, pt.mode, config.statistic, config.reps, seed, config.test)
                })
            }));
            let mut rec = match outcome {
                Ok(Ok(rec)) => rec,
                Ok(Err(e)) => {
                    let mut rec = ExperimentRecord::blank(
                        index,
                        pt,
                        config.statistic,
                        config.test,
                        config.reps,
                        seed,
                        RecordStatus::Failed,
                    );
                    rec.message = Some(e.to_string());
                    rec
                }
                Err(panic) => {
                    let msg = panic
                        .downcast_ref::<String>()
                        .cloned()
                        .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                        .unwrap_or_else(|| "worker panicked".into());
                    let mut rec = ExperimentRecord::blank(
                        index,
                        pt,
                        config.statistic,
                        config.test,
                        config.reps,
                        seed,
                        RecordStatus::Failed,
                    );
                    rec.message = Some(msg);
                    rec
                }
            };
            rec.index = index;
            if config.timing {
                rec.wallclock_ms = start.elapsed().as_millis() as u64;
            }
            sink(&rec)?;
            out.push(rec);
        }
        Ok(out)
    }
}
