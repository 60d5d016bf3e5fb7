use serde::{Deserialize, Serialize};

use super::census::Census;
use super::timeline::RoundTimeline;
use crate::protocol::ProtocolParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrialOutcome {
    /// The stop condition was met.
    Reached,
    /// The interaction budget ran out first. Not a protocol failure: the
    /// backup rule guarantees eventual termination.
    Exhausted,
    /// The alive count dropped to zero.
    SafetyViolation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct EpochBoundaries {
    /// First global round boundary.
    pub epoch1_end: Option<u64>,
    /// Every active leader has counted down to `cnt = 0`.
    pub epoch2_end: Option<u64>,
    /// Stabilisation, reported only when epoch 2 ended normally.
    pub epoch3_end: Option<u64>,
}

/// Census at a fixed point of the trial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snapshot {
    pub interaction: u64,
    pub census: Census,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub params: ProtocolParams,
    pub outcome: TrialOutcome,
    pub interactions: u64,
    pub parallel_time: f64,
    pub single_active_at: Option<u64>,
    pub single_alive_at: Option<u64>,
    pub resolved_at: Option<u64>,
    pub epochs: EpochBoundaries,
    /// Active leaders left when epoch 2 ended.
    pub epoch2_survivors: Option<u32>,
    /// Entry `l`: first interaction at which some active leader held drag `l`.
    pub drag_first_active: Vec<Option<u64>>,
    /// Census taken when the first global round's cluster of passes closed.
    pub first_round: Option<Snapshot>,
    pub timeline: RoundTimeline,
    pub final_census: Census,
}

impl TrialRecord {
    /// Stabilisation time in parallel units, if the trial stabilised.
    pub fn stabilization_time(&self) -> Option<f64> {
        self.single_alive_at.map(|t| t as f64 / self.params.n as f64)
    }

    /// Interactions between the first active leader at drag `l` and the
    /// first at drag `l + 1`.
    pub fn drag_interarrival(&self, l: usize) -> Option<u64> {
        let a = (*self.drag_first_active.get(l)?)?;
        let b = (*self.drag_first_active.get(l + 1)?)?;
        Some(b.saturating_sub(a))
    }

    /// Round index (1-based) containing interaction `t`, or 0 before the first round.
    pub fn round_at(&self, t: u64) -> u32 {
        self.timeline
            .iter()
            .take_while(|r| r.start <= t)
            .last()
            .map_or(0, |r| r.index)
    }
}
