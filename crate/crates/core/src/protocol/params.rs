use serde::{Deserialize, Serialize};

use crate::Error;

/// Largest clock modulus that still fits a phase into one byte.
pub const MAX_GAMMA: u16 = 252;
/// Caps on the overridable level counters. Both bound array-backed census tables.
pub const MAX_PHI: u8 = 32;
pub const MAX_PSI: u8 = 64;

pub const DEFAULT_GAMMA: u16 = 32;

/// Which way an advancing inhibitor moves when it is the responder of a
/// late interaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum InhibitorDragRule {
    /// Advance on meeting a coin, stop on anything else. Success probability
    /// per flip is the coin fraction, so `drag >= l` is reached by roughly
    /// `4^-l` of the inhibitors.
    #[default]
    AdvanceOnCoin,
    /// The literal rule table: advance on a non-coin, stop on a coin.
    AdvanceOnNonCoin,
}

/// Population size plus every constant the transition function reads.
///
/// Construct through [`ProtocolParams::new`] (defaults derived from `n`) and
/// the `with_*` overrides, then call [`ProtocolParams::validate`]; the
/// simulator refuses unvalidated combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProtocolParams {
    pub n: u32,
    pub gamma: u16,
    pub phi: u8,
    pub psi: u8,
    /// Only the pairwise backup rule runs; every agent starts as an active leader.
    pub backup_only: bool,
    /// Seniority tie-break step three: prefer the smaller round counter.
    pub seniority_uses_cnt: bool,
    pub inhibitor_drag_rule: InhibitorDragRule,
    /// Let leaders advance drag in any round, not only once `cnt` is 0.
    pub drag_advance_any_epoch: bool,
}

fn log2_log2(n: u32) -> f64 {
    (n as f64).log2().log2()
}

/// `max(1, floor(log2 log2 n) - 3)`.
pub fn default_phi(n: u32) -> u8 {
    if n < 4 {
        return 1;
    }
    let raw = log2_log2(n).floor() as i64 - 3;
    raw.clamp(1, MAX_PHI as i64) as u8
}

/// `ceil(log2 log2 n)`, at least 1.
pub fn default_psi(n: u32) -> u8 {
    if n < 4 {
        return 1;
    }
    let raw = log2_log2(n).ceil() as i64;
    raw.clamp(1, MAX_PSI as i64) as u8
}

impl ProtocolParams {
    pub fn new(n: u32) -> Self {
        Self {
            n,
            gamma: DEFAULT_GAMMA,
            phi: default_phi(n),
            psi: default_psi(n),
            backup_only: false,
            seniority_uses_cnt: true,
            inhibitor_drag_rule: InhibitorDragRule::AdvanceOnCoin,
            drag_advance_any_epoch: false,
        }
    }

    pub fn with_gamma(mut self, gamma: u16) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_phi(mut self, phi: u8) -> Self {
        self.phi = phi;
        self
    }

    pub fn with_psi(mut self, psi: u8) -> Self {
        self.psi = psi;
        self
    }

    pub fn with_backup_only(mut self, on: bool) -> Self {
        self.backup_only = on;
        self
    }

    pub fn with_inhibitor_drag_rule(mut self, rule: InhibitorDragRule) -> Self {
        self.inhibitor_drag_rule = rule;
        self
    }

    pub fn with_seniority_uses_cnt(mut self, on: bool) -> Self {
        self.seniority_uses_cnt = on;
        self
    }

    pub fn with_drag_advance_any_epoch(mut self, on: bool) -> Self {
        self.drag_advance_any_epoch = on;
        self
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.n < 2 {
            return Err(Error::PopulationTooSmall(self.n));
        }
        if self.gamma < 8 || !self.gamma.is_multiple_of(4) || self.gamma > MAX_GAMMA {
            return Err(Error::InvalidParams(format!(
                "gamma must be a multiple of 4 in [8, {MAX_GAMMA}], got {}",
                self.gamma
            )));
        }
        if self.phi == 0 || self.phi > MAX_PHI {
            return Err(Error::InvalidParams(format!(
                "phi must be in [1, {MAX_PHI}], got {}",
                self.phi
            )));
        }
        if self.psi == 0 || self.psi > MAX_PSI {
            return Err(Error::InvalidParams(format!(
                "psi must be in [1, {MAX_PSI}], got {}",
                self.psi
            )));
        }
        Ok(())
    }

    /// Initial round counter of a fresh leader, `2*phi + 3`.
    #[inline]
    pub fn cnt_start(&self) -> u8 {
        2 * self.phi + 3
    }

    #[inline]
    pub fn half_gamma(&self) -> u8 {
        (self.gamma / 2) as u8
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_loglog() {
        // log2 log2 2^16 = 4
        assert_eq!(default_phi(1 << 16), 1);
        assert_eq!(default_psi(1 << 16), 4);
        // log2 log2 2^17 = 4.09
        assert_eq!(default_psi(1 << 17), 5);
        assert_eq!(default_phi(1 << 8), 1);
        assert_eq!(default_psi(1 << 8), 3);
        // 2^(2^5) would be the first n with phi = 2; it does not fit u32.
        assert_eq!(default_phi(u32::MAX), 1);
    }

    #[test]
    fn gamma_validation() {
        assert!(ProtocolParams::new(16).validate().is_ok());
        for bad in [0u16, 4, 10, 30, 256] {
            assert!(ProtocolParams::new(16).with_gamma(bad).validate().is_err(), "{bad}");
        }
        assert!(ProtocolParams::new(16).with_gamma(8).validate().is_ok());
    }

    #[test]
    fn rejects_tiny_population() {
        assert!(matches!(
            ProtocolParams::new(1).validate(),
            Err(Error::PopulationTooSmall(1))
        ));
    }
}
