use serde::{Deserialize, Serialize};

use super::stats::Summary;
use crate::protocol::ProtocolParams;
use crate::sim::{TrialOutcome, TrialRecord};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateStats {
    pub params: ProtocolParams,
    pub trials: usize,
    pub reached: usize,
    pub exhausted: usize,
    pub safety_violations: usize,
    /// Parallel time to a single alive candidate, over the trials that got there.
    pub stabilization_time: Option<Summary>,
    pub single_active_time: Option<Summary>,
    pub interactions: Summary,
    pub epoch2_survivors: Option<Summary>,
}

/// Combine trials run with identical protocol parameters.
pub fn aggregate(trials: &[TrialRecord]) -> Result<AggregateStats, Error> {
    let first = trials
        .first()
        .ok_or_else(|| Error::Config("nothing to aggregate".into()))?;
    if trials.iter().any(|t| t.params != first.params) {
        return Err(Error::MixedParams);
    }
    let n = first.params.n as f64;
    let count = |o: TrialOutcome| trials.iter().filter(|t| t.outcome == o).count();
    let times = |f: fn(&TrialRecord) -> Option<u64>| -> Option<Summary> {
        let v: Vec<f64> = trials.iter().filter_map(f).map(|x| x as f64 / n).collect();
        Summary::of(&v)
    };
    let interactions: Vec<f64> = trials.iter().map(|t| t.interactions as f64).collect();
    let survivors: Vec<f64> = trials.iter().filter_map(|t| t.epoch2_survivors).map(f64::from).collect();
    Ok(AggregateStats {
        params: first.params,
        trials: trials.len(),
        reached: count(TrialOutcome::Reached),
        exhausted: count(TrialOutcome::Exhausted),
        safety_violations: count(TrialOutcome::SafetyViolation),
        stabilization_time: times(|t| t.single_alive_at),
        single_active_time: times(|t| t.single_active_at),
        interactions: Summary::of(&interactions).expect("non-empty"),
        epoch2_survivors: Summary::of(&survivors),
    })
}
