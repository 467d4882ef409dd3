use std::io::Write;
use std::sync::atomic::AtomicBool;
use std::sync::Arc;
use std::time::Duration;

use clap::Args;
use idealis::{Field, GroebnerConfig};
use serde_json::Value;

use crate::error::{CliError, Result};

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Coefficient field: q, fp:<p> or qsqrt:<d>. Each instance has a default.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Largest admissible S-pair queue.
    #[arg(long, global = true)]
    pub max_pairs: Option<usize>,
    /// Largest admissible number of stored basis terms.
    #[arg(long, global = true)]
    pub max_terms: Option<usize>,
    /// Wall-time budget for Gröbner computations, in seconds.
    #[arg(long, global = true)]
    pub time_budget: Option<u64>,
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Keep wall-time fields in JSON reports (they make reports differ between runs).
    #[arg(long, global = true)]
    pub timings: bool,
    /// Only warnings on stderr; no progress lines.
    #[arg(long, short, global = true)]
    pub quiet: bool,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: Option<Field>,
    pub groebner: GroebnerConfig,
    pub json: bool,
    pub timings: bool,
}

impl RunArgs {
    pub fn resolve(&self, cancel: Arc<AtomicBool>) -> Result<RunConfig> {
        let field = self.field.as_deref().map(str::parse::<Field>).transpose()?;
        let positive = |name: &str, v: Option<usize>| match v {
            Some(0) => Err(CliError::Usage(format!("--{name} must be positive"))),
            _ => Ok(v),
        };
        let mut groebner = GroebnerConfig::default();
        if let Some(n) = positive("max-pairs", self.max_pairs)? {
            groebner.max_pairs = n;
        }
        if let Some(n) = positive("max-terms", self.max_terms)? {
            groebner.max_terms = n;
        }
        if let Some(s) = positive("time-budget", self.time_budget.map(|s| s as usize))? {
            groebner.time_budget = Some(Duration::from_secs(s as u64));
        }
        groebner.cancel = Some(cancel);
        Ok(RunConfig {
            field,
            groebner,
            json: self.json,
            timings: self.timings,
        })
    }
}

impl RunConfig {
    /// Writes `v` as pretty JSON. Unless timings were asked for, wall-time
    /// fields are dropped so identical runs give identical bytes.
    pub fn emit_json(&self, out: &mut dyn Write, mut v: Value) -> Result<()> {
        if !self.timings {
            strip_timings(&mut v);
        }
        serde_json::to_writer_pretty(&mut *out, &v).map_err(|e| CliError::Output(e.into()))?;
        writeln!(out)?;
        Ok(())
    }
}

fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("wall_time");
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_timings);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timings),
        _ => {}
    }
}
