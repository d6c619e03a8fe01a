use super::harness::ExperimentRecord;
use crate::error::Result;
use std::io::Write;

pub const CSV_HEADER: &str =
    "n,p,d,q,mode,stat_kind,k,reps,seed,stat_mean,stat_se,power,type1,threshold,phase_label,wallclock_ms";

/// 17 significant digits in scientific notation; `NaN` for missing values.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// Writes sweep records as CSV, header first.
pub struct CsvWriter<W: Write> {
    out: W,
}

impl<W: Write> CsvWriter<W> {
    pub fn new(mut out: W) -> Result<Self> {
        writeln!(out, "{CSV_HEADER}")?;
        Ok(Self { out })
    }

    pub fn write_record(&mut self, r: &ExperimentRecord) -> Result<()> {
        writeln!(
            self.out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.n,
            format_float(r.p),
            r.d,
            format_float(r.q),
            r.mode,
            r.stat_kind,
            r.k,
            r.reps,
            r.seed,
            format_float(r.stat_mean),
            format_float(r.stat_se),
            format_float(r.power),
            format_float(r.type1),
            format_float(r.threshold),
            r.phase_label.map(|l| l.as_str()).unwrap_or(""),
            r.wallclock_ms
        )?;
        self.out.flush()?;
        Ok(())
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}
