mod common;

use common::*;
use pple::protocol::*;
use proptest::prelude::*;

fn check_agent(pre: &AgentState, post: &AgentState, class: InteractionClass, p: &ProtocolParams) -> Result<(), TestCaseError> {
    prop_assert!((post.clock.phase as u16) < p.gamma);
    prop_assert!(pre.role() == post.role() || pre.role().can_become(post.role()), "{:?} -> {:?}", pre.role(), post.role());
    let top_coin = matches!(post.body, RoleState::Coin(c) if c.level == p.phi);
    prop_assert_eq!(post.clock.timemode == TimeMode::InJunta, top_coin);
    prop_assert_eq!(post.is_leader_output(), post.leader().is_some_and(|l| l.leadermode.is_alive()));

    match (pre.body, post.body) {
        (RoleState::Coin(a), RoleState::Coin(b)) => {
            prop_assert!(b.level >= a.level && b.level <= p.phi);
            if a.mode == Mode::Stop {
                prop_assert_eq!(a, b);
            }
        }
        (RoleState::Inhibitor(a), RoleState::Inhibitor(b)) => {
            prop_assert!(b.drag >= a.drag && b.drag <= p.psi);
            if a.mode == Mode::Stop {
                prop_assert_eq!((b.drag, b.mode), (a.drag, Mode::Stop));
            }
            prop_assert!(a.elev == Elevation::Low || b.elev == Elevation::High);
        }
        (RoleState::Leader(a), RoleState::Leader(b)) => {
            let expected_cnt = if class == InteractionClass::Pass0 { a.cnt.saturating_sub(1) } else { a.cnt };
            prop_assert_eq!(b.cnt, expected_cnt);
            prop_assert!(b.leadermode.rank() >= a.leadermode.rank());
            prop_assert!(b.drag >= a.drag && b.drag <= p.psi);
            if b.flip != a.flip {
                prop_assert!(class == InteractionClass::Pass0 && b.flip == Flip::None || a.flip == Flip::None);
            }
        }
        _ => {}
    }
    Ok(())
}

fn alive(s: &AgentState) -> bool {
    s.leader().is_some_and(|l| l.leadermode.is_alive())
}

fn top_drag_is_alive(a: &AgentState, b: &AgentState) -> bool {
    let ls: Vec<_> = [a, b].into_iter().filter_map(|s| s.leader()).collect();
    let Some(top) = ls.iter().map(|l| l.drag).max() else { return false };
    ls.iter().any(|l| l.drag == top && l.leadermode.is_alive())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20_000))]

    #[test]
    fn interact_respects_state_invariants((p, r, i) in arb_case()) {
        let out = interact(r, i, &p);
        check_agent(&r, &out.responder, out.class, &p)?;
        // the initiator's clock never moves
        prop_assert_eq!(out.initiator.clock, i.clock);
        check_agent(&i, &out.initiator, InteractionClass::Other, &p)?;
    }

    #[test]
    fn interact_is_pure((p, r, i) in arb_case()) {
        prop_assert_eq!(interact(r, i, &p), interact(r, i, &p));
        prop_assert_eq!(interact(r, i, &p), interact_with_order(r, i, &p, &CANONICAL_ORDER));
    }

    #[test]
    fn pair_keeps_an_alive_leader((p, r, i) in arb_case(), passive in any::<bool>(), swap in any::<bool>()) {
        // an alive leader carrying the pair's top drag can never be eliminated
        let (mut top, other) = if swap { (i, r) } else { (r, i) };
        let mut l = top.leader().copied().unwrap_or(LeaderState::fresh(p.cnt_start()));
        l.leadermode = if passive { LeaderMode::P } else { LeaderMode::A };
        l.drag = l.drag.max(other.leader().map_or(0, |o| o.drag));
        top.body = RoleState::Leader(l);
        top.clock.timemode = TimeMode::Follower;
        let (r, i) = if swap { (other, top) } else { (top, other) };
        prop_assert!(top_drag_is_alive(&r, &i));
        let out = interact(r, i, &p);
        prop_assert!(alive(&out.responder) || alive(&out.initiator));
        prop_assert!(top_drag_is_alive(&out.responder, &out.initiator));
    }

    #[test]
    fn two_alive_leaders_lose_one((p, mut r, mut i) in arb_case(), a in 0u8..2, b in 0u8..2, backup_only in any::<bool>()) {
        let modes = [LeaderMode::A, LeaderMode::P];
        let p = p.with_backup_only(backup_only);
        let pick = |s: &mut AgentState, m: LeaderMode| {
            let mut l = s.leader().copied().unwrap_or(LeaderState::fresh(p.cnt_start()));
            l.leadermode = m;
            *s = AgentState {
                clock: ClockState { phase: s.clock.phase, timemode: TimeMode::Follower },
                body: RoleState::Leader(l),
            };
        };
        pick(&mut r, modes[a as usize]);
        pick(&mut i, modes[b as usize]);
        let out = interact(r, i, &p);
        prop_assert_eq!(alive(&out.responder) as u8 + alive(&out.initiator) as u8, 1);
    }
}

#[test]
fn output_mapping() {
    for m in [LeaderMode::A, LeaderMode::P, LeaderMode::W] {
        let s = AgentState::with_body(RoleState::Leader(LeaderState {
            leadermode: m,
            ..LeaderState::fresh(5)
        }));
        assert_eq!(s.is_leader_output(), m != LeaderMode::W);
    }
    for body in [RoleState::Zero, RoleState::X, RoleState::D] {
        assert!(!AgentState::with_body(body).is_leader_output());
    }
}
