//! Agent state and its compact 32-bit encoding.
//!
//! The role-specific payload lives inside [`RoleState`], so an agent can only
//! ever carry the fields that belong to its role.

use serde::{Deserialize, Serialize};

use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum Role {
    Zero = 0,
    X = 1,
    D = 2,
    Coin = 3,
    Inhibitor = 4,
    Leader = 5,
}

impl Role {
    pub const ALL: [Role; 6] = [
        Role::Zero,
        Role::X,
        Role::D,
        Role::Coin,
        Role::Inhibitor,
        Role::Leader,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Role::Zero => "zero",
            Role::X => "x",
            Role::D => "d",
            Role::Coin => "coin",
            Role::Inhibitor => "inhibitor",
            Role::Leader => "leader",
        }
    }

    /// Whether `self -> to` is an allowed role change. Identity is allowed.
    pub fn can_become(self, to: Role) -> bool {
        if self == to {
            return true;
        }
        matches!(
            (self, to),
            (Role::Zero, Role::X | Role::Leader | Role::D)
                | (Role::X, Role::Coin | Role::Inhibitor | Role::D)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum TimeMode {
    #[default]
    Follower,
    InJunta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct ClockState {
    pub phase: u8,
    pub timemode: TimeMode,
}

/// Shared by coins and inhibitors: still advancing or frozen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    Adv,
    Stop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoinState {
    pub level: u8,
    pub mode: Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Elevation {
    Low,
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InhibitorState {
    pub drag: u8,
    pub mode: Mode,
    pub elev: Elevation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LeaderMode {
    /// Active: still flipping coins.
    A,
    /// Passive: marked for elimination but still mapped to leader output.
    P,
    /// Withdrawn: a follower.
    W,
}

impl LeaderMode {
    #[inline]
    pub fn is_alive(self) -> bool {
        !matches!(self, LeaderMode::W)
    }

    /// Position in the one-way A -> P -> W lattice.
    pub fn rank(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flip {
    None,
    Heads,
    Tails,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeaderState {
    pub cnt: u8,
    pub leadermode: LeaderMode,
    pub flip: Flip,
    pub void: bool,
    pub drag: u8,
}

impl LeaderState {
    /// A freshly split-off leader candidate.
    pub fn fresh(cnt_start: u8) -> Self {
        Self {
            cnt: cnt_start,
            leadermode: LeaderMode::A,
            flip: Flip::None,
            void: true,
            drag: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RoleState {
    Zero,
    X,
    D,
    Coin(CoinState),
    Inhibitor(InhibitorState),
    Leader(LeaderState),
}

impl RoleState {
    #[inline]
    pub fn role(&self) -> Role {
        match self {
            RoleState::Zero => Role::Zero,
            RoleState::X => Role::X,
            RoleState::D => Role::D,
            RoleState::Coin(_) => Role::Coin,
            RoleState::Inhibitor(_) => Role::Inhibitor,
            RoleState::Leader(_) => Role::Leader,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AgentState {
    pub clock: ClockState,
    pub body: RoleState,
}

impl AgentState {
    /// The uniform initial state: role Zero, phase 0, follower.
    pub const INITIAL: AgentState = AgentState {
        clock: ClockState {
            phase: 0,
            timemode: TimeMode::Follower,
        },
        body: RoleState::Zero,
    };

    pub fn with_body(body: RoleState) -> Self {
        Self {
            clock: ClockState::default(),
            body,
        }
    }

    #[inline]
    pub fn role(&self) -> Role {
        self.body.role()
    }

    #[inline]
    pub fn leader(&self) -> Option<&LeaderState> {
        match &self.body {
            RoleState::Leader(l) => Some(l),
            _ => None,
        }
    }

    #[inline]
    pub fn coin(&self) -> Option<&CoinState> {
        match &self.body {
            RoleState::Coin(c) => Some(c),
            _ => None,
        }
    }

    #[inline]
    pub fn inhibitor(&self) -> Option<&InhibitorState> {
        match &self.body {
            RoleState::Inhibitor(i) => Some(i),
            _ => None,
        }
    }

    /// Output mapping: only alive leader candidates (A or P) output "leader".
    #[inline]
    pub fn is_leader_output(&self) -> bool {
        matches!(&self.body, RoleState::Leader(l) if l.leadermode.is_alive())
    }

    /// Bit layout (LSB first):
    ///
    /// ```text
    /// 0..8   phase
    /// 8      timemode (1 = injunta)
    /// 9..12  role tag
    /// coin:      12..18 level, 18 mode (1 = stop)
    /// inhibitor: 12..19 drag,  19 mode, 20 elev (1 = high)
    /// leader:    12..20 cnt,   20..22 leadermode, 22..24 flip, 24 void, 25..32 drag
    /// ```
    pub fn pack(&self) -> u32 {
        let mut w = self.clock.phase as u32;
        if self.clock.timemode == TimeMode::InJunta {
            w |= 1 << 8;
        }
        w |= (self.role() as u32) << 9;
        match self.body {
            RoleState::Zero | RoleState::X | RoleState::D => {}
            RoleState::Coin(c) => {
                w |= (c.level as u32 & 0x3f) << 12;
                w |= ((c.mode == Mode::Stop) as u32) << 18;
            }
            RoleState::Inhibitor(i) => {
                w |= (i.drag as u32 & 0x7f) << 12;
                w |= ((i.mode == Mode::Stop) as u32) << 19;
                w |= ((i.elev == Elevation::High) as u32) << 20;
            }
            RoleState::Leader(l) => {
                w |= (l.cnt as u32) << 12;
                w |= (l.leadermode as u32) << 20;
                w |= (l.flip as u32) << 22;
                w |= (l.void as u32) << 24;
                w |= (l.drag as u32 & 0x7f) << 25;
            }
        }
        w
    }

    pub fn unpack(w: u32) -> Result<Self, Error> {
        let bad = || Error::InvalidState(w);
        let clock = ClockState {
            phase: (w & 0xff) as u8,
            timemode: if w & (1 << 8) != 0 {
                TimeMode::InJunta
            } else {
                TimeMode::Follower
            },
        };
        let mode = |bit: u32| if w & (1 << bit) != 0 { Mode::Stop } else { Mode::Adv };
        let body = match (w >> 9) & 0x7 {
            0 => RoleState::Zero,
            1 => RoleState::X,
            2 => RoleState::D,
            3 => RoleState::Coin(CoinState {
                level: ((w >> 12) & 0x3f) as u8,
                mode: mode(18),
            }),
            4 => RoleState::Inhibitor(InhibitorState {
                drag: ((w >> 12) & 0x7f) as u8,
                mode: mode(19),
                elev: if w & (1 << 20) != 0 {
                    Elevation::High
                } else {
                    Elevation::Low
                },
            }),
            5 => RoleState::Leader(LeaderState {
                cnt: ((w >> 12) & 0xff) as u8,
                leadermode: match (w >> 20) & 0x3 {
                    0 => LeaderMode::A,
                    1 => LeaderMode::P,
                    2 => LeaderMode::W,
                    _ => return Err(bad()),
                },
                flip: match (w >> 22) & 0x3 {
                    0 => Flip::None,
                    1 => Flip::Heads,
                    2 => Flip::Tails,
                    _ => return Err(bad()),
                },
                void: w & (1 << 24) != 0,
                drag: ((w >> 25) & 0x7f) as u8,
            }),
            _ => return Err(bad()),
        };
        Ok(AgentState { clock, body })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_state() -> impl Strategy<Value = AgentState> {
        let mode = prop_oneof![Just(Mode::Adv), Just(Mode::Stop)];
        let body = prop_oneof![
            Just(RoleState::Zero),
            Just(RoleState::X),
            Just(RoleState::D),
            (0u8..=32, mode.clone()).prop_map(|(level, mode)| RoleState::Coin(CoinState { level, mode })),
            (0u8..=64, mode, any::<bool>()).prop_map(|(drag, mode, hi)| {
                RoleState::Inhibitor(InhibitorState {
                    drag,
                    mode,
                    elev: if hi { Elevation::High } else { Elevation::Low },
                })
            }),
            (any::<u8>(), 0u8..3, 0u8..3, any::<bool>(), 0u8..=64).prop_map(|(cnt, m, f, void, drag)| {
                RoleState::Leader(LeaderState {
                    cnt,
                    leadermode: [LeaderMode::A, LeaderMode::P, LeaderMode::W][m as usize],
                    flip: [Flip::None, Flip::Heads, Flip::Tails][f as usize],
                    void,
                    drag,
                })
            }),
        ];
        (any::<u8>(), any::<bool>(), body).prop_map(|(phase, j, body)| AgentState {
            clock: ClockState {
                phase,
                timemode: if j { TimeMode::InJunta } else { TimeMode::Follower },
            },
            body,
        })
    }

    proptest! {
        #[test]
        fn pack_roundtrip(s in arb_state()) {
            prop_assert_eq!(AgentState::unpack(s.pack()).unwrap(), s);
        }
    }

    #[test]
    fn unpack_rejects_bad_tags() {
        assert!(AgentState::unpack(7 << 9).is_err());
        // leader with leadermode tag 3
        assert!(AgentState::unpack((5 << 9) | (3 << 20)).is_err());
    }

    #[test]
    fn role_lattice() {
        assert!(Role::Zero.can_become(Role::Leader));
        assert!(Role::X.can_become(Role::Inhibitor));
        assert!(!Role::X.can_become(Role::Leader));
        assert!(!Role::Coin.can_become(Role::D));
        assert!(!Role::D.can_become(Role::Zero));
    }
}
