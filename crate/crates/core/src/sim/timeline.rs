//! Global rounds reconstructed from per-agent passes through 0.
//!
//! Rounds are a per-agent notion. Two passes belong to the same global round
//! when they are separated by less than `gap` interactions; a longer silence
//! closes the cluster. A pass after the close opens a new round only if its
//! agent already passed in the current one, so a late straggler is still
//! credited to the round it missed.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundRecord {
    /// 1-based. Round `k` opens with the first pass of the `k`-th cluster.
    pub index: u32,
    pub start: u64,
    /// Start of the next round, once it has been observed.
    pub end: Option<u64>,
    /// Last pass through 0 that belongs to this round's cluster.
    pub cluster_last: u64,
    pub cluster_closed: bool,
    pub passes: u64,
    pub alive_start: u32,
    pub active_start: u32,
    pub alive_end: Option<u32>,
    pub active_end: Option<u32>,
    /// Fraction of alive leaders whose round was still void at the round's end.
    pub void_fraction_end: Option<f64>,
    /// Coin level flipped by most active leaders during the round.
    pub coin_level: Option<u8>,
    /// Smallest and largest per-agent gap (interactions since that agent's
    /// previous pass) among the passes of this cluster.
    pub gap_min: Option<u64>,
    pub gap_max: Option<u64>,
}

impl RoundRecord {
    pub fn duration(&self) -> Option<u64> {
        self.end.map(|e| e - self.start)
    }
}

pub type RoundTimeline = Vec<RoundRecord>;

/// What the tracker saw on one pass event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PassOutcome {
    NewRound(u32),
    SameRound,
}

#[derive(Debug, Clone)]
pub struct RoundTracker {
    gap: u64,
    last_pass: Vec<u64>,
    /// Interaction index after which the open cluster counts as closed.
    pub(crate) close_deadline: u64,
    pub rounds: RoundTimeline,
}

impl RoundTracker {
    pub fn new(n: usize, gap: u64) -> Self {
        Self {
            gap: gap.max(1),
            last_pass: vec![0; n],
            close_deadline: u64::MAX,
            rounds: Vec::new(),
        }
    }

    pub fn gap(&self) -> u64 {
        self.gap
    }

    pub fn current_round(&self) -> u32 {
        self.rounds.len() as u32
    }

    /// Record a pass through 0 by `agent` at interaction `t`.
    #[inline]
    pub fn on_pass(&mut self, agent: usize, t: u64) -> PassOutcome {
        let prev = std::mem::replace(&mut self.last_pass[agent], t);
        let same = self
            .rounds
            .last()
            .is_some_and(|r| !r.cluster_closed || prev < r.start);
        let outcome = if same {
            PassOutcome::SameRound
        } else {
            let index = self.rounds.len() as u32 + 1;
            self.rounds.push(RoundRecord {
                index,
                start: t,
                end: None,
                cluster_last: t,
                cluster_closed: false,
                passes: 0,
                alive_start: 0,
                active_start: 0,
                alive_end: None,
                active_end: None,
                void_fraction_end: None,
                coin_level: None,
                gap_min: None,
                gap_max: None,
            });
            PassOutcome::NewRound(index)
        };
        let r = self.rounds.last_mut().expect("round just ensured");
        r.cluster_last = t;
        r.passes += 1;
        if prev > 0 {
            let g = t - prev;
            r.gap_min = Some(r.gap_min.map_or(g, |m| m.min(g)));
            r.gap_max = Some(r.gap_max.map_or(g, |m| m.max(g)));
        }
        if !r.cluster_closed {
            self.close_deadline = t + self.gap;
        }
        outcome
    }

    /// Close the open cluster if the deadline has passed. Returns the index of
    /// the closed round.
    #[inline]
    pub fn maybe_close(&mut self, t: u64) -> Option<u32> {
        if t < self.close_deadline {
            return None;
        }
        self.close_deadline = u64::MAX;
        let r = self.rounds.last_mut()?;
        r.cluster_closed = true;
        Some(r.index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clusters_split_on_silence() {
        let mut t = RoundTracker::new(4, 10);
        assert_eq!(t.on_pass(0, 5), PassOutcome::NewRound(1));
        assert_eq!(t.on_pass(1, 9), PassOutcome::SameRound);
        assert_eq!(t.maybe_close(18), None);
        assert_eq!(t.on_pass(2, 18), PassOutcome::SameRound);
        assert_eq!(t.maybe_close(28), Some(1));
        assert_eq!(t.maybe_close(29), None);
        assert_eq!(t.on_pass(0, 105), PassOutcome::NewRound(2));
        assert_eq!(t.rounds[0].passes, 3);
        assert_eq!(t.rounds[1].gap_min, Some(100));
        assert_eq!(t.rounds[0].gap_min, None);
    }

    #[test]
    fn straggler_joins_the_round_it_missed() {
        let mut t = RoundTracker::new(4, 10);
        assert_eq!(t.on_pass(0, 5), PassOutcome::NewRound(1));
        assert_eq!(t.maybe_close(15), Some(1));
        assert_eq!(t.on_pass(1, 30), PassOutcome::SameRound);
        assert_eq!(t.maybe_close(40), None);
        assert_eq!(t.on_pass(1, 100), PassOutcome::NewRound(2));
        assert_eq!(t.rounds[0].passes, 2);
    }
}
