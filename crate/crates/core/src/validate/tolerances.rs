use serde::{Deserialize, Serialize};

use crate::Error;

/// Tolerance file shipped with the crate.
pub const BUILTIN: &str = include_str!("../../tolerances.toml");
pub const SUPPORTED_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub version: u32,
    pub seed: u64,
    pub trials: usize,
    pub backup_trials: usize,
    pub budget_parallel_time: u64,
    pub oracle_trials: usize,
    pub oracle_draws_per_trial: usize,
    pub uniformity_steps: u64,
    pub slack: Slack,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Slack {
    pub backup_mean: f64,
    pub role_split: f64,
    pub coin_cascade: f64,
    pub junta_exponent: f64,
    pub inhibitor: f64,
    pub drag_ratio: f64,
    pub round_model_step: f64,
    pub round_model_alpha: f64,
    pub scaling_ratio: f64,
    pub pass_fraction: f64,
}

impl Tolerances {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("shipped tolerance file is valid")
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        let t: Tolerances = toml::from_str(text).map_err(|e| Error::Config(format!("tolerance file: {e}")))?;
        if t.version != SUPPORTED_VERSION {
            return Err(Error::Config(format!(
                "tolerance file version {} (expected {SUPPORTED_VERSION})",
                t.version
            )));
        }
        if t.trials == 0 || t.backup_trials == 0 || t.oracle_trials == 0 || t.oracle_draws_per_trial == 0 {
            return Err(Error::Config("tolerance file: trial counts must be positive".into()));
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_parses_without_slack() {
        let t = Tolerances::builtin();
        assert_eq!(t.slack, Slack::default());
        assert_eq!(t.trials, 100);
    }

    #[test]
    fn rejects_other_versions() {
        let text = BUILTIN.replace("version = 1", "version = 2");
        assert!(Tolerances::parse(&text).is_err());
    }
}
