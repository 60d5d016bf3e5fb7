use serde::{Deserialize, Serialize};

use crate::protocol::RoleState;
use crate::sim::census::cumulative;
use crate::sim::{Census, SimState};

/// Counts per coin level or per drag value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelHistogram {
    /// Agents whose value is exactly `l`.
    pub exact: Vec<u32>,
    /// Agents whose value is `l` or higher. `cumulative[0]` is the
    /// sub-population size.
    pub cumulative: Vec<u32>,
    /// Members of the sub-population that have stopped advancing.
    pub stopped: u32,
}

impl LevelHistogram {
    pub fn from_exact(exact: Vec<u32>, stopped: u32) -> Self {
        let cumulative = cumulative(&exact);
        Self {
            exact,
            cumulative,
            stopped,
        }
    }

    pub fn population(&self) -> u32 {
        self.cumulative.first().copied().unwrap_or(0)
    }

    /// Number of agents at level `l` or higher; 0 past the top level.
    pub fn at_least(&self, l: usize) -> u32 {
        self.cumulative.get(l).copied().unwrap_or(0)
    }

    pub fn top(&self) -> usize {
        self.exact.len().saturating_sub(1)
    }

    pub fn all_stopped(&self) -> bool {
        self.stopped == self.population()
    }

    pub fn coins_of(census: &Census) -> Self {
        Self::from_exact(census.coin_levels.clone(), census.coins_stopped)
    }

    pub fn drags_of(census: &Census) -> Self {
        Self::from_exact(census.inhibitor_drag.clone(), census.inhibitors_stopped)
    }
}

/// Coin census by a full scan of the population: `C_l` for `l` in `0..=phi`.
pub fn coin_census(state: &SimState) -> LevelHistogram {
    let mut exact = vec![0u32; state.params().phi as usize + 1];
    let mut stopped = 0;
    for a in state.agents() {
        if let RoleState::Coin(c) = a.body {
            exact[c.level as usize] += 1;
            stopped += u32::from(c.mode == crate::protocol::Mode::Stop);
        }
    }
    LevelHistogram::from_exact(exact, stopped)
}

/// Inhibitor drag census by a full scan: `D_l` for `l` in `0..=psi`.
pub fn drag_census(state: &SimState) -> LevelHistogram {
    let mut exact = vec![0u32; state.params().psi as usize + 1];
    let mut stopped = 0;
    for a in state.agents() {
        if let RoleState::Inhibitor(i) = a.body {
            exact[i.drag as usize] += 1;
            stopped += u32::from(i.mode == crate::protocol::Mode::Stop);
        }
    }
    LevelHistogram::from_exact(exact, stopped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::{AgentState, CoinState, Mode, ProtocolParams};

    #[test]
    fn level_zero_coins() {
        let p = ProtocolParams::new(8).with_phi(3);
        let coin = AgentState::with_body(RoleState::Coin(CoinState { level: 0, mode: Mode::Adv }));
        let s = SimState::from_agents(p, vec![coin; 8], 1).unwrap();
        let h = coin_census(&s);
        assert_eq!(h.cumulative, vec![8, 0, 0, 0]);
        assert_eq!(h.population(), 8);
        assert!(!h.all_stopped());
        assert_eq!(h, LevelHistogram::coins_of(s.census()));
    }

    #[test]
    fn backup_only_has_no_inhibitors() {
        let s = SimState::new(ProtocolParams::new(16).with_backup_only(true), 1).unwrap();
        let h = drag_census(&s);
        assert!(h.exact.iter().all(|&c| c == 0));
        assert_eq!(h.population(), 0);
    }
}
