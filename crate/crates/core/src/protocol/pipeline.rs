//! The composed transition function for one ordered interaction.

use serde::{Deserialize, Serialize};

use super::clock::{clock_update, InteractionClass};
use super::params::ProtocolParams;
use super::rules::*;
use super::state::{AgentState, Role, RoleState};

/// Result of one interaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interaction {
    pub responder: AgentState,
    pub initiator: AgentState,
    pub class: InteractionClass,
}

/// Pipeline stages after the clock update, in their canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stage {
    Init,
    Deactivation,
    Coin,
    InhibitorDrag,
    InhibitorSignal,
    LeaderReset,
    LeaderFlip,
    VoidEpidemic,
    DragAdvance,
    DragKill,
    Backup,
}

pub const CANONICAL_ORDER: [Stage; 11] = [
    Stage::Init,
    Stage::Deactivation,
    Stage::Coin,
    Stage::InhibitorDrag,
    Stage::InhibitorSignal,
    Stage::LeaderReset,
    Stage::LeaderFlip,
    Stage::VoidEpidemic,
    Stage::DragAdvance,
    Stage::DragKill,
    Stage::Backup,
];

/// Apply the full rule pipeline. Stages 4..=11 read the initiator as it was
/// before the interaction; only the role split and the backup rule write it.
#[inline]
pub fn interact(responder: AgentState, initiator: AgentState, params: &ProtocolParams) -> Interaction {
    if params.backup_only {
        let (r, i) = backup_stage(responder, initiator, params);
        return Interaction {
            responder: r,
            initiator: i,
            class: InteractionClass::Other,
        };
    }

    let before = initiator;
    let (clock, class) = clock_update(responder.clock, initiator.clock.phase, params.gamma);
    let mut r = AgentState { clock, ..responder };
    let mut i = initiator;

    // Role rules key on the responder's role before this interaction, so an
    // agent created by the split only starts running them next time.
    match responder.body {
        RoleState::Zero | RoleState::X => {
            (r, i) = apply_init_rules(r, i, params.cnt_start());
            r = apply_deactivation(r, class);
        }
        RoleState::Coin(_) => r = apply_coin_rules(r, &before, params.phi),
        RoleState::Inhibitor(inh) => {
            let inh = apply_inhibitor_drag(inh, &before, class, params.psi, params.inhibitor_drag_rule);
            r.body = RoleState::Inhibitor(apply_inhibitor_signal(inh, &before));
        }
        RoleState::Leader(mut l) => {
            l = apply_leader_reset(l, class);
            l = apply_leader_flip(l, &before, class, params.phi);
            if let Some(other) = before.leader() {
                l = apply_void_epidemic(l, other, class);
            }
            l = apply_drag_advance(l, &before, params.psi, params.drag_advance_any_epoch);
            if let Some(other) = before.leader() {
                l = apply_drag_kill(l, other);
            }
            r.body = RoleState::Leader(l);
            (r, i) = backup_stage(r, i, params);
        }
        RoleState::D => {}
    }

    debug_assert!(responder.role().can_become(r.role()));
    debug_assert!(initiator.role().can_become(i.role()));
    Interaction {
        responder: r,
        initiator: i,
        class,
    }
}

#[inline]
fn backup_stage(r: AgentState, i: AgentState, params: &ProtocolParams) -> (AgentState, AgentState) {
    match (r.body, i.body) {
        (RoleState::Leader(a), RoleState::Leader(b)) => {
            let (a, b) = apply_backup(a, b, params.seniority_uses_cnt);
            (
                AgentState {
                    body: RoleState::Leader(a),
                    ..r
                },
                AgentState {
                    body: RoleState::Leader(b),
                    ..i
                },
            )
        }
        _ => (r, i),
    }
}

fn run_stage(
    stage: Stage,
    pre_role: Role,
    r: &mut AgentState,
    i: &mut AgentState,
    before: &AgentState,
    class: InteractionClass,
    params: &ProtocolParams,
) {
    let leader_of = |a: &AgentState| a.leader().copied();
    let holds = |role: Role| pre_role == role;
    match stage {
        Stage::Init | Stage::Deactivation if !matches!(pre_role, Role::Zero | Role::X) => {}
        Stage::Coin if !holds(Role::Coin) => {}
        Stage::InhibitorDrag | Stage::InhibitorSignal if !holds(Role::Inhibitor) => {}
        Stage::LeaderReset
        | Stage::LeaderFlip
        | Stage::VoidEpidemic
        | Stage::DragAdvance
        | Stage::DragKill
        | Stage::Backup
            if !holds(Role::Leader) => {}
        Stage::Init => (*r, *i) = apply_init_rules(*r, *i, params.cnt_start()),
        Stage::Deactivation => *r = apply_deactivation(*r, class),
        Stage::Coin => *r = apply_coin_rules(*r, before, params.phi),
        Stage::InhibitorDrag => {
            if let RoleState::Inhibitor(x) = r.body {
                r.body = RoleState::Inhibitor(apply_inhibitor_drag(
                    x,
                    before,
                    class,
                    params.psi,
                    params.inhibitor_drag_rule,
                ));
            }
        }
        Stage::InhibitorSignal => {
            if let RoleState::Inhibitor(x) = r.body {
                r.body = RoleState::Inhibitor(apply_inhibitor_signal(x, before));
            }
        }
        Stage::LeaderReset => {
            if let Some(l) = leader_of(r) {
                r.body = RoleState::Leader(apply_leader_reset(l, class));
            }
        }
        Stage::LeaderFlip => {
            if let Some(l) = leader_of(r) {
                r.body = RoleState::Leader(apply_leader_flip(l, before, class, params.phi));
            }
        }
        Stage::VoidEpidemic => {
            if let (Some(l), Some(o)) = (leader_of(r), before.leader()) {
                r.body = RoleState::Leader(apply_void_epidemic(l, o, class));
            }
        }
        Stage::DragAdvance => {
            if let Some(l) = leader_of(r) {
                r.body = RoleState::Leader(apply_drag_advance(l, before, params.psi, params.drag_advance_any_epoch));
            }
        }
        Stage::DragKill => {
            if let (Some(l), Some(o)) = (leader_of(r), before.leader()) {
                r.body = RoleState::Leader(apply_drag_kill(l, o));
            }
        }
        Stage::Backup => (*r, *i) = backup_stage(*r, *i, params),
    }
}

/// Reference pipeline with an explicit stage order. [`interact`] is the
/// fused form of this with [`CANONICAL_ORDER`].
pub fn interact_with_order(
    responder: AgentState,
    initiator: AgentState,
    params: &ProtocolParams,
    order: &[Stage],
) -> Interaction {
    if params.backup_only {
        let (r, i) = backup_stage(responder, initiator, params);
        return Interaction {
            responder: r,
            initiator: i,
            class: InteractionClass::Other,
        };
    }
    let before = initiator;
    let (clock, class) = clock_update(responder.clock, initiator.clock.phase, params.gamma);
    let mut r = AgentState { clock, ..responder };
    let mut i = initiator;
    for &s in order {
        run_stage(s, responder.role(), &mut r, &mut i, &before, class, params);
    }
    Interaction {
        responder: r,
        initiator: i,
        class,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::state::*;

    fn params() -> ProtocolParams {
        ProtocolParams::new(1 << 10).with_gamma(16).with_phi(4).with_psi(4)
    }

    #[test]
    fn zero_zero_split_keeps_clock() {
        let z = AgentState::INITIAL;
        let out = interact(z, z, &params());
        assert_eq!(out.responder.body, RoleState::X);
        assert_eq!(out.initiator.leader(), Some(&LeaderState::fresh(11)));
        assert_eq!((out.responder.clock.phase, out.initiator.clock.phase), (0, 0));
        assert_eq!(out.class, InteractionClass::Early);
    }

    #[test]
    fn clock_and_coin_compose() {
        let p = params();
        let r = AgentState {
            clock: ClockState { phase: 14, timemode: TimeMode::Follower },
            body: RoleState::Coin(CoinState { level: 0, mode: Mode::Adv }),
        };
        let i = AgentState {
            clock: ClockState { phase: 2, timemode: TimeMode::InJunta },
            body: RoleState::Coin(CoinState { level: 4, mode: Mode::Stop }),
        };
        let out = interact(r, i, &p);
        assert_eq!(out.class, InteractionClass::Pass0);
        assert_eq!(out.responder.clock.phase, 2);
        assert_eq!(out.responder.coin(), Some(&CoinState { level: 1, mode: Mode::Adv }));
        assert_eq!(out.initiator, i);
    }

    #[test]
    fn backup_only_tie() {
        let p = params().with_backup_only(true);
        let a = AgentState::with_body(RoleState::Leader(LeaderState::fresh(p.cnt_start())));
        let out = interact(a, a, &p);
        assert_eq!(out.responder.leader().unwrap().leadermode, LeaderMode::W);
        assert_eq!(out.initiator.leader().unwrap().leadermode, LeaderMode::A);
    }

    #[test]
    fn uninitialised_responder_passing_zero_deactivates() {
        let p = params();
        let r = AgentState {
            clock: ClockState { phase: 15, timemode: TimeMode::Follower },
            body: RoleState::X,
        };
        let i = AgentState {
            clock: ClockState { phase: 1, timemode: TimeMode::Follower },
            body: RoleState::X,
        };
        // X + X splits, then the coin-to-be passes zero: the split wins the
        // role and deactivation no longer applies.
        let out = interact(r, i, &p);
        assert_eq!(out.class, InteractionClass::Pass0);
        assert_eq!(out.responder.role(), Role::Coin);
        assert_eq!(out.initiator.role(), Role::Inhibitor);

        let lone = interact(r, AgentState { body: RoleState::D, ..i }, &p);
        assert_eq!(lone.responder.role(), Role::D);
    }

    #[test]
    fn fresh_coin_is_still_advancing() {
        let x = AgentState::with_body(RoleState::X);
        let out = interact(x, x, &params());
        assert_eq!(out.responder.coin(), Some(&CoinState { level: 0, mode: Mode::Adv }));
        assert_eq!(out.initiator.inhibitor().unwrap().mode, Mode::Adv);
    }
}
