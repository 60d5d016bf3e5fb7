//! Individual transition rules. Each one is a pure function of the
//! responder's current state and the initiator's pre-interaction state.

use std::cmp::Ordering;

use super::clock::InteractionClass;
use super::params::InhibitorDragRule;
use super::state::{
    AgentState, CoinState, Elevation, Flip, InhibitorState, LeaderMode, LeaderState, Mode, RoleState, TimeMode,
};

/// Role split: `0 + 0 -> X + L` and `X + X -> C + I`.
pub fn apply_init_rules(responder: AgentState, initiator: AgentState, cnt_start: u8) -> (AgentState, AgentState) {
    match (responder.body, initiator.body) {
        (RoleState::Zero, RoleState::Zero) => (
            AgentState { body: RoleState::X, ..responder },
            AgentState {
                body: RoleState::Leader(LeaderState::fresh(cnt_start)),
                ..initiator
            },
        ),
        (RoleState::X, RoleState::X) => (
            AgentState {
                body: RoleState::Coin(CoinState { level: 0, mode: Mode::Adv }),
                ..responder
            },
            AgentState {
                body: RoleState::Inhibitor(InhibitorState {
                    drag: 0,
                    mode: Mode::Adv,
                    elev: Elevation::Low,
                }),
                ..initiator
            },
        ),
        _ => (responder, initiator),
    }
}

/// Agents still uninitialised at the end of their first round deactivate.
pub fn apply_deactivation(responder: AgentState, class: InteractionClass) -> AgentState {
    match (responder.body, class) {
        (RoleState::Zero | RoleState::X, InteractionClass::Pass0) => AgentState {
            body: RoleState::D,
            ..responder
        },
        _ => responder,
    }
}

/// Junta formation. A coin reaching level `phi` freezes and joins the junta.
pub fn apply_coin_rules(responder: AgentState, initiator: &AgentState, phi: u8) -> AgentState {
    let RoleState::Coin(coin) = responder.body else {
        return responder;
    };
    if coin.mode == Mode::Stop {
        return responder;
    }
    match initiator.coin() {
        Some(other) if other.level >= coin.level => {
            if coin.level >= phi {
                return responder;
            }
            let level = coin.level + 1;
            if level == phi {
                AgentState {
                    clock: super::state::ClockState {
                        timemode: TimeMode::InJunta,
                        ..responder.clock
                    },
                    body: RoleState::Coin(CoinState { level, mode: Mode::Stop }),
                }
            } else {
                AgentState {
                    body: RoleState::Coin(CoinState { level, mode: Mode::Adv }),
                    ..responder
                }
            }
        }
        _ => AgentState {
            body: RoleState::Coin(CoinState {
                mode: Mode::Stop,
                ..coin
            }),
            ..responder
        },
    }
}

/// Inhibitor preprocessing: count consecutive successful synthetic flips
/// during late interactions.
pub fn apply_inhibitor_drag(
    responder: InhibitorState,
    initiator: &AgentState,
    class: InteractionClass,
    psi: u8,
    rule: InhibitorDragRule,
) -> InhibitorState {
    if responder.mode == Mode::Stop || class != InteractionClass::Late {
        return responder;
    }
    let is_coin = initiator.coin().is_some();
    let advance = match rule {
        InhibitorDragRule::AdvanceOnCoin => is_coin,
        InhibitorDragRule::AdvanceOnNonCoin => !is_coin,
    };
    if !advance {
        return InhibitorState {
            mode: Mode::Stop,
            ..responder
        };
    }
    let drag = responder.drag.saturating_add(1).min(psi);
    InhibitorState {
        drag,
        mode: if drag >= psi { Mode::Stop } else { Mode::Adv },
        ..responder
    }
}

/// Slowed-down signal: a stopped low inhibitor is raised by an active leader
/// of the same drag, and raised inhibitors spread to their own drag class.
pub fn apply_inhibitor_signal(responder: InhibitorState, initiator: &AgentState) -> InhibitorState {
    if responder.elev == Elevation::High {
        return responder;
    }
    let raise = match initiator.body {
        RoleState::Leader(l) => {
            responder.mode == Mode::Stop && l.leadermode == LeaderMode::A && l.drag == responder.drag
        }
        RoleState::Inhibitor(i) => i.elev == Elevation::High && i.drag == responder.drag,
        _ => false,
    };
    if raise {
        InhibitorState {
            elev: Elevation::High,
            ..responder
        }
    } else {
        responder
    }
}

/// Round reset on a pass through 0. `drag` and `leadermode` survive.
pub fn apply_leader_reset(responder: LeaderState, class: InteractionClass) -> LeaderState {
    if class != InteractionClass::Pass0 {
        return responder;
    }
    LeaderState {
        cnt: responder.cnt.saturating_sub(1),
        flip: Flip::None,
        void: true,
        ..responder
    }
}

/// Coin level flipped in the round with counter `cnt`:
/// `[1,1,2,2,...,phi-1,phi-1,phi,phi,phi,phi]` for `cnt = 1..=2phi+2`, and the
/// level-0 (near fair) coin once `cnt` reaches 0. `None` for the opening
/// round `cnt = 2phi+3`, where no flip happens, and for out-of-range values.
#[inline]
pub fn gamma_schedule(cnt: u8, phi: u8) -> Option<u8> {
    if cnt > 2 * phi + 2 {
        return None;
    }
    Some(cnt.div_ceil(2).min(phi))
}

/// One synthetic-coin flip per round in the early half.
pub fn apply_leader_flip(responder: LeaderState, initiator: &AgentState, class: InteractionClass, phi: u8) -> LeaderState {
    if class != InteractionClass::Early || responder.leadermode != LeaderMode::A || responder.flip != Flip::None {
        return responder;
    }
    let Some(threshold) = gamma_schedule(responder.cnt, phi) else {
        return responder;
    };
    match initiator.coin() {
        Some(c) if c.level >= threshold => LeaderState {
            flip: Flip::Heads,
            void: false,
            ..responder
        },
        _ => LeaderState {
            flip: Flip::Tails,
            ..responder
        },
    }
}

/// Late-half broadcast of "someone drew heads". Active tails turn passive.
pub fn apply_void_epidemic(responder: LeaderState, initiator: &LeaderState, class: InteractionClass) -> LeaderState {
    if class != InteractionClass::Late || initiator.void {
        return responder;
    }
    if responder.leadermode == LeaderMode::A && responder.flip == Flip::Tails && responder.void {
        LeaderState {
            leadermode: LeaderMode::P,
            void: false,
            ..responder
        }
    } else if responder.void {
        LeaderState {
            void: false,
            ..responder
        }
    } else {
        responder
    }
}

/// An active leader holding heads meets a raised inhibitor of its own drag.
/// Only leaders in the final epoch (`cnt == 0`) advance unless `any_epoch`;
/// heads from the earlier, biased rounds would otherwise push thousands of
/// candidates up the first drag levels at once.
pub fn apply_drag_advance(responder: LeaderState, initiator: &AgentState, psi: u8, any_epoch: bool) -> LeaderState {
    if responder.leadermode != LeaderMode::A
        || responder.flip != Flip::Heads
        || responder.drag >= psi
        || (responder.cnt != 0 && !any_epoch)
    {
        return responder;
    }
    match initiator.inhibitor() {
        Some(i) if i.elev == Elevation::High && i.drag == responder.drag => LeaderState {
            drag: responder.drag + 1,
            ..responder
        },
        _ => responder,
    }
}

/// Any leader that sees a strictly larger drag withdraws and adopts it.
pub fn apply_drag_kill(responder: LeaderState, initiator: &LeaderState) -> LeaderState {
    if responder.drag < initiator.drag {
        LeaderState {
            leadermode: LeaderMode::W,
            drag: initiator.drag,
            ..responder
        }
    } else {
        responder
    }
}

fn flip_rank(f: Flip) -> u8 {
    match f {
        Flip::Heads => 2,
        Flip::None => 1,
        Flip::Tails => 0,
    }
}

/// Seniority preorder over alive candidates. `Greater` means `a` is more
/// senior: higher drag, then A over P, then (optionally) smaller `cnt`, then
/// heads > none > tails.
pub fn seniority_compare(a: &LeaderState, b: &LeaderState, uses_cnt: bool) -> Ordering {
    a.drag
        .cmp(&b.drag)
        .then_with(|| b.leadermode.rank().cmp(&a.leadermode.rank()))
        .then_with(|| if uses_cnt { b.cnt.cmp(&a.cnt) } else { Ordering::Equal })
        .then_with(|| flip_rank(a.flip).cmp(&flip_rank(b.flip)))
}

/// Pairwise backup elimination between two alive candidates: the less senior
/// one withdraws, and on a tie the responder does.
pub fn apply_backup(responder: LeaderState, initiator: LeaderState, uses_cnt: bool) -> (LeaderState, LeaderState) {
    if !responder.leadermode.is_alive() || !initiator.leadermode.is_alive() {
        return (responder, initiator);
    }
    let withdraw = |l: LeaderState| LeaderState {
        leadermode: LeaderMode::W,
        ..l
    };
    match seniority_compare(&responder, &initiator, uses_cnt) {
        Ordering::Greater => (responder, withdraw(initiator)),
        Ordering::Less | Ordering::Equal => (withdraw(responder), initiator),
    }
}
