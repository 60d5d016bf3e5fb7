//! Command-line front end: single runs, benchmarks, sweeps over `n`, and the
//! acceptance suite.

mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analytics::{aggregate, AggregateStats};
use crate::protocol::{InhibitorDragRule, ProtocolParams};
use crate::sim::{
    default_workers, run_batch, BatchSpec, JsonLinesTrace, NoTrace, SimOptions, SimState, StopCondition,
    TrialOutcome, TrialRecord,
};
use crate::validate::{parse_selection, Suite, SuiteConfig, Tolerances};
use crate::Error;
use output::{AggregateRow, Emitter, TrialRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;
pub const EXIT_SAFETY: i32 = 4;
pub const EXIT_CRITERION: i32 = 5;

/// Interaction budget per trial when none is given, in units of n.
pub const DEFAULT_BUDGET_PARALLEL_TIME: u64 = 20_000;

#[derive(Debug, Parser)]
#[command(name = "pple", version, about = "Leader-election population protocol simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One seeded trial.
    Run(RunArgs),
    /// Many seeded trials at one population size, aggregated.
    Bench(BenchArgs),
    /// Aggregates over a list of population sizes.
    Sweep(SweepArgs),
    /// The acceptance suite.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Lines,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ProtocolArgs {
    /// Clock modulus.
    #[arg(long)]
    pub gamma: Option<u16>,
    /// Coin level cap.
    #[arg(long)]
    pub phi: Option<u8>,
    /// Drag cap.
    #[arg(long)]
    pub psi: Option<u8>,
    /// Start with every agent an active leader and run the backup rule only.
    #[arg(long)]
    pub backup_only: bool,
    /// Inhibitors advance their drag on meeting a non-coin instead of a coin.
    #[arg(long)]
    pub drag_advance_on_noncoin: bool,
    /// Leave the round counter out of the seniority order.
    #[arg(long)]
    pub seniority_ignores_cnt: bool,
    /// Let heads from any round advance a leader's drag, not only in the final epoch.
    #[arg(long)]
    pub drag_advance_any_epoch: bool,
}

impl ProtocolArgs {
    fn params(&self, n: u32) -> Result<ProtocolParams, Error> {
        let mut p = ProtocolParams::new(n)
            .with_backup_only(self.backup_only)
            .with_seniority_uses_cnt(!self.seniority_ignores_cnt)
            .with_drag_advance_any_epoch(self.drag_advance_any_epoch)
            .with_inhibitor_drag_rule(self.drag_rule());
        if let Some(g) = self.gamma {
            p = p.with_gamma(g);
        }
        if let Some(phi) = self.phi {
            p = p.with_phi(phi);
        }
        if let Some(psi) = self.psi {
            p = p.with_psi(psi);
        }
        p.validate()?;
        Ok(p)
    }

    fn drag_rule(&self) -> InhibitorDragRule {
        if self.drag_advance_on_noncoin {
            InhibitorDragRule::AdvanceOnNonCoin
        } else {
            InhibitorDragRule::AdvanceOnCoin
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TrialArgs {
    #[command(flatten)]
    pub protocol: ProtocolArgs,
    /// Stop condition: single-alive, single-active, resolved, first-round,
    /// epoch2-end, drag:<L>, max:<N>; `a+b` needs both, `a,b` either.
    #[arg(long, default_value = "single-alive")]
    #[serde(serialize_with = "output::display")]
    pub stop: StopCondition,
    /// Interaction budget per trial [default: 20000 n].
    #[arg(long)]
    pub max_interactions: Option<u64>,
    #[arg(long, value_enum, default_value = "lines")]
    pub format: Format,
}

impl TrialArgs {
    fn budget(&self, n: u32) -> u64 {
        self.max_interactions
            .unwrap_or(DEFAULT_BUDGET_PARALLEL_TIME * n as u64)
    }

    fn stop_for(&self, n: u32) -> StopCondition {
        self.stop.clone().with_budget(self.budget(n))
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RunArgs {
    /// Population size; `2^k` is accepted.
    #[arg(long, value_parser = parse_size, default_value = "65536")]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub trial: TrialArgs,
    /// Write trace events as JSON lines to this file (`-` for stderr).
    #[arg(long)]
    pub trace: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PoolArgs {
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Master seed; trial `i` runs with `trial_seed(seed, i)`.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads [default: $PPLE_WORKERS, else all cores].
    #[arg(long)]
    pub workers: Option<usize>,
}

impl PoolArgs {
    fn workers(&self) -> usize {
        self.workers.unwrap_or_else(default_workers)
    }

    fn check(&self) -> Result<(), Error> {
        if self.trials == 0 {
            return Err(Error::Config("--trials must be at least 1".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("--workers must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BenchArgs {
    #[arg(long, value_parser = parse_size, default_value = "65536")]
    pub n: u32,
    #[command(flatten)]
    pub pool: PoolArgs,
    #[command(flatten)]
    pub trial: TrialArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    /// Ascending population sizes, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_size, required = true)]
    pub n_list: Vec<u32>,
    #[command(flatten)]
    pub pool: PoolArgs,
    #[command(flatten)]
    pub trial: TrialArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ValidateArgs {
    /// Criteria to run, e.g. `all`, `1,2,11` or `3-6`.
    #[arg(long, default_value = "all")]
    pub criteria: String,
    /// Run the suite with inhibitors advancing on non-coins.
    #[arg(long)]
    pub drag_advance_on_noncoin: bool,
    /// Run the suite with drag advancing in any round.
    #[arg(long)]
    pub drag_advance_any_epoch: bool,
    /// Tolerance file to use instead of the built-in one.
    #[arg(long)]
    pub tolerances: Option<String>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, value_enum, default_value = "lines")]
    pub format: Format,
}

/// Accepts a plain integer or `2^k`.
pub fn parse_size(s: &str) -> Result<u32, String> {
    let v = match s.split_once('^') {
        Some(("2", k)) => {
            let k: u32 = k.parse().map_err(|_| format!("bad exponent in '{s}'"))?;
            1u32.checked_shl(k).filter(|_| k < 32).ok_or_else(|| format!("'{s}' is too large"))?
        }
        Some(_) => return Err(format!("only powers of 2 are accepted, got '{s}'")),
        None => s.parse().map_err(|_| format!("'{s}' is not a population size"))?,
    };
    Ok(v)
}

/// Parse arguments and run. Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Io(_) | Error::Csv(_) | Error::Json(_) => 1,
                _ => EXIT_CONFIG,
            }
        }
    }
}

fn dispatch(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    match cmd {
        Command::Run(a) => cmd_run(a, out, err),
        Command::Bench(a) => cmd_bench(a, out, err),
        Command::Sweep(a) => cmd_sweep(a, out, err),
        Command::Validate(a) => cmd_validate(a, out, err),
    }
}

fn outcome_code(outcomes: impl IntoIterator<Item = TrialOutcome>) -> i32 {
    let mut code = EXIT_OK;
    for o in outcomes {
        match o {
            TrialOutcome::SafetyViolation => return EXIT_SAFETY,
            TrialOutcome::Exhausted => code = EXIT_EXHAUSTED,
            TrialOutcome::Reached => {}
        }
    }
    code
}

fn report_violations(records: &[TrialRecord], err: &mut dyn Write) -> Result<(), Error> {
    for r in records.iter().filter(|r| r.outcome == TrialOutcome::SafetyViolation) {
        writeln!(
            err,
            "safety violation: replay with `pple run --n {} --seed {}` (same protocol flags)",
            r.params.n, r.seed
        )?;
        writeln!(err, "final census: {}", serde_json::to_string(&r.final_census)?)?;
    }
    Ok(())
}

pub fn cmd_run(a: &RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    let params = a.trial.protocol.params(a.n)?;
    let stop = a.trial.stop_for(a.n);
    let mut state = SimState::with_options(params, a.seed, SimOptions::default())?;
    let record = match a.trace.as_deref() {
        None => state.run_until(&stop, &mut NoTrace)?,
        Some("-") => {
            let mut t = JsonLinesTrace::new(BufWriter::new(std::io::stderr()), true);
            let r = state.run_until(&stop, &mut t)?;
            t.finish()?;
            r
        }
        Some(path) => {
            let mut t = JsonLinesTrace::new(BufWriter::new(File::create(path)?), true);
            let r = state.run_until(&stop, &mut t)?;
            t.finish()?;
            r
        }
    };
    let config = serde_json::to_value(a)?;
    let mut em = Emitter::new(a.trial.format, out);
    em.trial(&TrialRow::new(&record, &stop), &config, &record)?;
    report_violations(std::slice::from_ref(&record), err)?;
    Ok(outcome_code([record.outcome]))
}

fn bench_one(
    n: u32,
    pool: &PoolArgs,
    trial: &TrialArgs,
    err: &mut dyn Write,
) -> Result<(Vec<TrialRecord>, AggregateStats, StopCondition), Error> {
    pool.check()?;
    let spec = BatchSpec {
        params: trial.protocol.params(n)?,
        stop: trial.stop_for(n),
        trials: pool.trials,
        master_seed: pool.seed,
        options: SimOptions::default(),
    };
    let records = run_batch(&spec, pool.workers())?;
    report_violations(&records, err)?;
    let stats = aggregate(&records)?;
    Ok((records, stats, spec.stop))
}

pub fn cmd_bench(a: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    let (records, stats, stop) = bench_one(a.n, &a.pool, &a.trial, err)?;
    let config = serde_json::to_value(a)?;
    let mut em = Emitter::new(a.trial.format, out);
    for r in &records {
        em.trial(&TrialRow::new(r, &stop), &config, r)?;
    }
    if a.trial.format == Format::Lines {
        em.aggregate(&AggregateRow::new(&stats, a.pool.seed), &config, &stats)?;
    }
    Ok(outcome_code(records.iter().map(|r| r.outcome)))
}

pub fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    if a.n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config("--n-list must be strictly ascending".into()));
    }
    let config = serde_json::to_value(a)?;
    let mut em = Emitter::new(a.trial.format, out);
    let mut code = EXIT_OK;
    for &n in &a.n_list {
        let (records, stats, _) = bench_one(n, &a.pool, &a.trial, err)?;
        em.aggregate(&AggregateRow::new(&stats, a.pool.seed), &config, &stats)?;
        code = code.max(outcome_code(records.iter().map(|r| r.outcome)));
    }
    Ok(code)
}

pub fn cmd_validate(a: &ValidateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    let criteria = parse_selection(&a.criteria)?;
    let tolerances = match &a.tolerances {
        Some(path) => Tolerances::parse(&std::fs::read_to_string(path)?)?,
        None => Tolerances::builtin(),
    };
    if a.workers == Some(0) {
        return Err(Error::Config("--workers must be at least 1".into()));
    }
    let mut cfg = SuiteConfig::new(criteria.clone(), a.workers.unwrap_or_else(default_workers));
    cfg.tolerances = tolerances;
    cfg.drag_advance_any_epoch = a.drag_advance_any_epoch;
    cfg.drag_rule = if a.drag_advance_on_noncoin {
        InhibitorDragRule::AdvanceOnNonCoin
    } else {
        InhibitorDragRule::AdvanceOnCoin
    };
    cfg.progress = true;
    let mut suite = Suite::new(cfg.clone())?;
    let config = serde_json::to_value(a)?;
    let mut em = Emitter::new(a.format, out);
    let mut failed = 0;
    for id in criteria {
        let report = suite.run_one(id)?;
        writeln!(err, "{report}")?;
        failed += usize::from(!report.passed);
        em.criterion(&report, &config, cfg.tolerances.version)?;
    }
    Ok(if failed > 0 { EXIT_CRITERION } else { EXIT_OK })
}
