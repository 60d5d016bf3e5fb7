use serde::{Deserialize, Serialize};

use crate::protocol::{AgentState, Elevation, LeaderMode, Mode, ProtocolParams, RoleState};

/// Population counters maintained incrementally by the stepping loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    /// Indexed by `Role as usize`.
    pub roles: [u32; 6],
    /// Leaders per mode, indexed by `LeaderMode as usize`.
    pub leader_modes: [u32; 3],
    /// Active leaders per round counter value.
    pub active_by_cnt: Vec<u32>,
    /// Active leaders per drag value.
    pub active_by_drag: Vec<u32>,
    /// Alive leaders whose current round is not void.
    pub alive_nonvoid: u32,
    /// Coins per exact level.
    pub coin_levels: Vec<u32>,
    pub coins_stopped: u32,
    /// Inhibitors per exact drag.
    pub inhibitor_drag: Vec<u32>,
    pub inhibitors_stopped: u32,
    pub inhibitors_high: u32,
}

impl Census {
    pub fn empty(params: &ProtocolParams) -> Self {
        Self {
            roles: [0; 6],
            leader_modes: [0; 3],
            active_by_cnt: vec![0; params.cnt_start() as usize + 1],
            active_by_drag: vec![0; params.psi as usize + 1],
            alive_nonvoid: 0,
            coin_levels: vec![0; params.phi as usize + 1],
            coins_stopped: 0,
            inhibitor_drag: vec![0; params.psi as usize + 1],
            inhibitors_stopped: 0,
            inhibitors_high: 0,
        }
    }

    pub fn scan(agents: &[AgentState], params: &ProtocolParams) -> Self {
        let mut c = Self::empty(params);
        for a in agents {
            c.add(&a.body);
        }
        c
    }

    #[inline]
    fn apply(&mut self, body: &RoleState, add: bool) {
        #[inline]
        fn bump(x: &mut u32, add: bool) {
            if add {
                *x += 1
            } else {
                *x -= 1
            }
        }
        bump(&mut self.roles[body.role() as usize], add);
        match body {
            RoleState::Coin(c) => {
                bump(&mut self.coin_levels[c.level as usize], add);
                if c.mode == Mode::Stop {
                    bump(&mut self.coins_stopped, add);
                }
            }
            RoleState::Inhibitor(i) => {
                bump(&mut self.inhibitor_drag[i.drag as usize], add);
                if i.mode == Mode::Stop {
                    bump(&mut self.inhibitors_stopped, add);
                }
                if i.elev == Elevation::High {
                    bump(&mut self.inhibitors_high, add);
                }
            }
            RoleState::Leader(l) => {
                bump(&mut self.leader_modes[l.leadermode as usize], add);
                if l.leadermode == LeaderMode::A {
                    bump(&mut self.active_by_cnt[l.cnt as usize], add);
                    bump(&mut self.active_by_drag[l.drag as usize], add);
                }
                if l.leadermode.is_alive() && !l.void {
                    bump(&mut self.alive_nonvoid, add);
                }
            }
            RoleState::Zero | RoleState::X | RoleState::D => {}
        }
    }

    #[inline]
    pub fn add(&mut self, body: &RoleState) {
        self.apply(body, true);
    }

    #[inline]
    pub fn remove(&mut self, body: &RoleState) {
        self.apply(body, false);
    }

    #[inline]
    pub fn replace(&mut self, old: &RoleState, new: &RoleState) {
        self.remove(old);
        self.add(new);
    }

    #[inline]
    pub fn active(&self) -> u32 {
        self.leader_modes[LeaderMode::A as usize]
    }

    #[inline]
    pub fn passive(&self) -> u32 {
        self.leader_modes[LeaderMode::P as usize]
    }

    #[inline]
    pub fn withdrawn(&self) -> u32 {
        self.leader_modes[LeaderMode::W as usize]
    }

    #[inline]
    pub fn alive(&self) -> u32 {
        self.active() + self.passive()
    }

    #[inline]
    pub fn leaders(&self) -> u32 {
        self.roles[crate::protocol::Role::Leader as usize]
    }

    /// Active leaders that have not yet counted down to the final epoch.
    #[inline]
    pub fn active_counting(&self) -> u32 {
        self.active() - self.active_by_cnt[0]
    }

    /// Cumulative coin counts: entry `l` is the number of coins at level `l` or higher.
    pub fn coin_cumulative(&self) -> Vec<u32> {
        cumulative(&self.coin_levels)
    }

    pub fn inhibitor_cumulative(&self) -> Vec<u32> {
        cumulative(&self.inhibitor_drag)
    }

    /// Round counter held by most active leaders, if any are active.
    pub fn dominant_active_cnt(&self) -> Option<u8> {
        self.active_by_cnt
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .max_by_key(|(_, &c)| c)
            .map(|(cnt, _)| cnt as u8)
    }
}

pub(crate) fn cumulative(exact: &[u32]) -> Vec<u32> {
    let mut out = vec![0; exact.len()];
    let mut acc = 0;
    for (l, &c) in exact.iter().enumerate().rev() {
        acc += c;
        out[l] = acc;
    }
    out
}
