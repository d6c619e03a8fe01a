use crate::{
    Cli, Command, DetectArgs, Failure, ModelArgs, Quantity, SampleArgs, StatArgs, SweepArgs, TheoryArgs, VerifyArgs,
};
use rgg_core::mc::CsvWriter;
use rgg_core::model::{GramRoute, GraphFile, GraphSampler, LatentFile, Thresholds};
use rgg_core::theory::{self, PhasePoint};
use rgg_core::verify::{self, Suite};
use rgg_core::{Error, ExperimentConfig, Harness, ModelParams, StatisticSpec};
use serde::Serialize;
use serde_json::json;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

type CmdResult = std::result::Result<(), Failure>;

pub fn run(cli: Cli) -> CmdResult {
    let workers = cli.workers;
    match cli.command {
        Command::Sample(a) => sample(a),
        Command::Stat(a) => stat(a),
        Command::Detect(a) => detect(a, workers),
        Command::Sweep(a) => sweep(a, workers),
        Command::Theory(a) => theory(a),
        Command::Verify(a) => verify(a, workers),
    }
}

fn print_json<T: Serialize>(value: &T) -> CmdResult {
    let line = serde_json::to_string(value).map_err(Error::from)?;
    println!("{line}");
    Ok(())
}

fn harness(workers: Option<usize>) -> Result<Harness, Error> {
    match workers {
        Some(w) => Harness::new(w),
        None => Harness::from_env(),
    }
}

/// A missing input is the caller's mistake, so it maps to exit code 1
/// rather than to the generic I/O failure.
fn require_file(path: &Path) -> Result<(), Error> {
    if path.is_file() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("input file {} does not exist", path.display())))
    }
}

impl ModelArgs {
    fn params(&self) -> Result<ModelParams, Error> {
        ModelParams::new(self.n, self.p, self.d, self.q)
    }
}

fn sample(a: SampleArgs) -> CmdResult {
    let mut sampler = GraphSampler::new(a.model.params()?, a.mode)?;
    if a.latent_out.is_some() && a.mode.uses_latent() {
        sampler = sampler.with_route(GramRoute::Explicit)?;
    }
    let (graph, latent) = sampler.sample_full(a.seed);
    let file = GraphFile::from(&graph);
    match &a.out {
        Some(path) => file.write(path)?,
        None => println!("{}", file.to_json()?),
    }
    if let Some(path) = &a.latent_out {
        let Some(latent) = latent else {
            return Err(
                Error::InvalidParams(format!("mode {} at p = {} has no latent positions", a.mode, a.model.p)).into()
            );
        };
        let text = serde_json::to_string(&LatentFile::from(&latent)).map_err(Error::from)?;
        std::fs::write(path, text + "\n").map_err(Error::from)?;
    }
    Ok(())
}

fn stat(a: StatArgs) -> CmdResult {
    require_file(&a.input)?;
    let graph = GraphFile::read(&a.input)?.into_sample()?;
    let spec = StatisticSpec::new(a.stat, a.k)?;
    let p = a.p.unwrap_or(graph.p());
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParams(format!("p must lie in [0, 1], got {p}")).into());
    }
    print_json(&spec.compute(&graph, p)?)
}

fn detect(a: DetectArgs, workers: Option<usize>) -> CmdResult {
    let params = a.model.params()?;
    let spec = StatisticSpec::new(a.stat, a.k)?;
    let h = harness(workers)?;
    let start = Instant::now();
    let mut rec = h.detection_experiment(params, a.mode, spec, a.reps, a.seed, a.test)?;
    if a.timing {
        rec.wallclock_ms = start.elapsed().as_millis() as u64;
    }
    print_json(&rec)
}

fn sweep(a: SweepArgs, workers: Option<usize>) -> CmdResult {
    require_file(&a.config)?;
    let mut config = ExperimentConfig::read(&a.config)?;
    if let Some(start) = a.start_index {
        config.start_index = start;
    }
    let h = harness(workers.or(config.workers))?;
    let out = File::create(&a.out).map_err(Error::from)?;
    let mut csv = CsvWriter::new(BufWriter::new(out))?;
    let records = h.sweep(&config, |rec| csv.write_record(rec))?;
    csv.into_inner().flush().map_err(Error::from)?;
    let failed = records.iter().filter(|r| r.status.as_str() == "failed").count();
    eprintln!("{} records written to {} ({failed} failed)", records.len(), a.out.display());
    Ok(())
}

fn need<T: Copy>(value: Option<T>, flag: &str, quantity: Quantity) -> Result<T, Error> {
    value.ok_or_else(|| Error::InvalidParams(format!("--{flag} is required for {quantity:?}")))
}

fn theory(a: TheoryArgs) -> CmdResult {
    let q = a.quantity;
    match q {
        Quantity::Gamma => {
            let d = need(a.d, "d", q)?;
            print_json(&json!({ "d": d, "gamma": theory::gamma_d(d)? }))
        }
        Quantity::Eta => {
            let d = need(a.d, "d", q)?;
            print_json(&json!({ "d": d, "eta": theory::eta_d(d)? }))
        }
        Quantity::HalfMoments => print_json(&theory::half_moment_table(need(a.d, "d", q)?)?),
        Quantity::Logdet => print_json(&theory::wishart_logdet_mean(need(a.n, "n", q)?, need(a.d, "d", q)?)?),
        Quantity::TvBounds => print_json(&theory::tv_bound_report(
            need(a.n, "n", q)?,
            need(a.p, "p", q)?,
            need(a.d, "d", q)?,
            need(a.q, "q", q)?,
        )?),
        Quantity::MeanBounds => print_json(&theory::signed_triangle_mean_bounds(
            need(a.n, "n", q)?,
            need(a.p, "p", q)?,
            need(a.d, "d", q)?,
            need(a.q, "q", q)?,
        )?),
        Quantity::Thresholds => print_json(&Thresholds::compute(need(a.p, "p", q)?, need(a.d, "d", q)?, true)?),
        Quantity::Phase => {
            let pt = match (a.alpha, a.beta) {
                (Some(alpha), Some(beta)) => PhasePoint::new(alpha, beta)?,
                _ => {
                    let (n, d, noise) = (need(a.n, "n", q)?, need(a.d, "d", q)?, need(a.q, "q", q)?);
                    PhasePoint::from_model(n, d, noise).ok_or_else(|| {
                        Error::InvalidParams("phase needs --alpha and --beta, or n ≥ 2, d ≥ 2 and 0 < q < 1".into())
                    })?
                }
            };
            print_json(&json!({ "label": theory::phase_classify(pt).as_str() }))
        }
    }
}

fn verify(a: VerifyArgs, workers: Option<usize>) -> CmdResult {
    let suite: Suite = a.suite.parse()?;
    let h = harness(workers)?;
    let results = verify::run(suite, a.seed, &h);
    for r in &results {
        print_json(r)?;
    }
    match results.iter().filter(|r| !r.passed).count() {
        0 => Ok(()),
        failed => Err(Failure::Verify(failed)),
    }
}
