//! Independent seeded trials on a worker pool.

use rayon::prelude::*;

use super::engine::{SimOptions, SimState};
use super::record::TrialRecord;
use super::seed::trial_seed;
use super::stop::StopCondition;
use super::trace::NoTrace;
use crate::protocol::ProtocolParams;
use crate::Error;

/// One batch: `trials` runs of the same parameters, trial `i` seeded with
/// `trial_seed(master_seed, i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchSpec {
    pub params: ProtocolParams,
    pub stop: StopCondition,
    pub trials: usize,
    pub master_seed: u64,
    pub options: SimOptions,
}

pub fn run_trial(spec: &BatchSpec, index: usize) -> Result<TrialRecord, Error> {
    let mut state = SimState::with_options(spec.params, trial_seed(spec.master_seed, index as u64), spec.options)?;
    state.run_until(&spec.stop, &mut NoTrace)
}

/// Run every trial of the batch on `workers` threads. Records come back in
/// trial-index order whatever the scheduling.
pub fn run_batch(spec: &BatchSpec, workers: usize) -> Result<Vec<TrialRecord>, Error> {
    spec.params.validate()?;
    spec.stop.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    pool.install(|| (0..spec.trials).into_par_iter().map(|i| run_trial(spec, i)).collect())
}

/// Default worker count: `PPLE_WORKERS` if set, else the available parallelism.
pub fn default_workers() -> usize {
    std::env::var("PPLE_WORKERS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, usize::from))
}
