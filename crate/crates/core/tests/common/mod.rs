#![allow(dead_code)]

use pple::protocol::*;
use proptest::prelude::*;

pub fn arb_params() -> impl Strategy<Value = ProtocolParams> {
    let switches = (any::<bool>(), any::<bool>(), any::<bool>());
    (prop::sample::select(vec![8u16, 12, 16, 32, 64]), 1u8..=4, 1u8..=6, switches).prop_map(
        |(gamma, phi, psi, (noncoin, uses_cnt, any_epoch))| {
            ProtocolParams::new(1 << 12)
                .with_gamma(gamma)
                .with_phi(phi)
                .with_psi(psi)
                .with_seniority_uses_cnt(uses_cnt)
                .with_drag_advance_any_epoch(any_epoch)
                .with_inhibitor_drag_rule(if noncoin {
                    InhibitorDragRule::AdvanceOnNonCoin
                } else {
                    InhibitorDragRule::AdvanceOnCoin
                })
        },
    )
}

fn mode(stop: bool) -> Mode {
    if stop {
        Mode::Stop
    } else {
        Mode::Adv
    }
}

pub fn arb_leader(p: &ProtocolParams) -> impl Strategy<Value = LeaderState> {
    let cnt_max = p.cnt_start();
    let psi = p.psi;
    (0..=cnt_max, 0u8..3, 0u8..3, any::<bool>(), 0..=psi).prop_map(|(cnt, m, f, void, drag)| LeaderState {
        cnt,
        leadermode: [LeaderMode::A, LeaderMode::P, LeaderMode::W][m as usize],
        flip: [Flip::None, Flip::Heads, Flip::Tails][f as usize],
        void,
        drag,
    })
}

/// Any state an agent can hold under `p`: phase below Γ, levels and drags
/// in range, in-junta exactly for coins at the top level.
pub fn arb_agent(p: &ProtocolParams) -> impl Strategy<Value = AgentState> {
    let (phi, psi) = (p.phi, p.psi);
    let body = prop_oneof![
        Just(RoleState::Zero),
        Just(RoleState::X),
        Just(RoleState::D),
        (0..=phi, any::<bool>()).prop_map(move |(level, stop)| RoleState::Coin(CoinState {
            level,
            mode: mode(stop || level == phi),
        })),
        (0..=psi, any::<bool>(), any::<bool>()).prop_map(move |(drag, stop, hi)| {
            RoleState::Inhibitor(InhibitorState {
                drag,
                mode: mode(stop || drag == psi),
                elev: if hi { Elevation::High } else { Elevation::Low },
            })
        }),
        arb_leader(p).prop_map(RoleState::Leader),
    ];
    (0..p.gamma as u8, body).prop_map(move |(phase, body)| {
        let junta = matches!(body, RoleState::Coin(c) if c.level == phi);
        AgentState {
            clock: ClockState {
                phase,
                timemode: if junta { TimeMode::InJunta } else { TimeMode::Follower },
            },
            body,
        }
    })
}

pub fn arb_case() -> impl Strategy<Value = (ProtocolParams, AgentState, AgentState)> {
    arb_params().prop_flat_map(|p| (Just(p), arb_agent(&p), arb_agent(&p)))
}
