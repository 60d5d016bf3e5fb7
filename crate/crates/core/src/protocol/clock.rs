//! Junta-driven modular phase clock.

use serde::{Deserialize, Serialize};

use super::state::{ClockState, TimeMode};

/// Where one responder update sits relative to the clock cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InteractionClass {
    /// The stored phase decreased: the responder passed through 0.
    Pass0,
    /// The phase crossed from the first half into the second half.
    PassHalf,
    /// Start and end phase both in `[0, gamma/2)`.
    Early,
    /// Start and end phase both in `[gamma/2, gamma)`.
    Late,
    Other,
}

/// `(x + y) mod gamma`.
#[inline]
pub fn mod_add(x: u8, y: u8, gamma: u16) -> u8 {
    ((x as u16 + y as u16) % gamma) as u8
}

/// Wrap-aware maximum: the plain maximum unless the two values are more than
/// half a cycle apart, in which case the smaller one is "ahead".
#[inline]
pub fn mod_max(x: u8, y: u8, gamma: u16) -> u8 {
    if (x as i16 - y as i16).unsigned_abs() <= gamma / 2 {
        x.max(y)
    } else {
        x.min(y)
    }
}

#[inline]
pub fn classify(old: u8, new: u8, gamma: u16) -> InteractionClass {
    let half = (gamma / 2) as u8;
    if new < old {
        InteractionClass::Pass0
    } else if old < half && new >= half {
        InteractionClass::PassHalf
    } else if new < half {
        InteractionClass::Early
    } else if old >= half {
        InteractionClass::Late
    } else {
        InteractionClass::Other
    }
}

/// Responder-side clock update. The initiator's phase is only read.
#[inline]
pub fn clock_update(responder: ClockState, initiator_phase: u8, gamma: u16) -> (ClockState, InteractionClass) {
    let target = match responder.timemode {
        TimeMode::Follower => initiator_phase,
        TimeMode::InJunta => mod_add(initiator_phase, 1, gamma),
    };
    let phase = mod_max(responder.phase, target, gamma);
    let class = classify(responder.phase, phase, gamma);
    (
        ClockState {
            phase,
            timemode: responder.timemode,
        },
        class,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn follower(phase: u8) -> ClockState {
        ClockState { phase, timemode: TimeMode::Follower }
    }

    #[test]
    fn mod_add_examples() {
        assert_eq!(mod_add(3, 1, 16), 4);
        assert_eq!(mod_add(15, 1, 16), 0);
        assert_eq!(mod_add(0, 0, 16), 0);
    }

    #[test]
    fn mod_max_examples() {
        assert_eq!(mod_max(3, 5, 16), 5);
        assert_eq!(mod_max(15, 1, 16), 1);
        assert_eq!(mod_max(7, 7, 16), 7);
        // exactly half a cycle apart is still the plain maximum
        assert_eq!(mod_max(0, 8, 16), 8);
        assert_eq!(mod_max(0, 9, 16), 0);
    }

    #[test]
    fn clock_update_examples() {
        assert_eq!(clock_update(follower(3), 5, 16), (follower(5), InteractionClass::Early));
        let junta = ClockState { phase: 0, timemode: TimeMode::InJunta };
        let (c, k) = clock_update(junta, 0, 16);
        assert_eq!((c.phase, c.timemode, k), (1, TimeMode::InJunta, InteractionClass::Early));
        assert_eq!(clock_update(follower(14), 2, 16), (follower(2), InteractionClass::Pass0));
        assert_eq!(clock_update(follower(7), 9, 16), (follower(9), InteractionClass::PassHalf));
        assert_eq!(clock_update(follower(9), 12, 16), (follower(12), InteractionClass::Late));
        // a lagging initiator never pulls the responder back
        assert_eq!(clock_update(follower(9), 3, 16), (follower(9), InteractionClass::Late));
    }

    #[test]
    fn junta_wraps_through_zero() {
        let junta = ClockState { phase: 15, timemode: TimeMode::InJunta };
        let (c, k) = clock_update(junta, 15, 16);
        assert_eq!((c.phase, k), (0, InteractionClass::Pass0));
    }

    proptest! {
        #[test]
        fn phase_stays_in_range(g in (2u16..=63).prop_map(|k| 4 * k), a in any::<u8>(), b in any::<u8>(), j in any::<bool>()) {
            let a = (a as u16 % g) as u8;
            let b = (b as u16 % g) as u8;
            let tm = if j { TimeMode::InJunta } else { TimeMode::Follower };
            let (c, class) = clock_update(ClockState { phase: a, timemode: tm }, b, g);
            prop_assert!((c.phase as u16) < g);
            prop_assert_ne!(class, InteractionClass::Other);
            prop_assert_eq!(mod_max(a, b, g), mod_max(b, a, g));
        }
    }
}
