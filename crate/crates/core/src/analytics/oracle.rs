//! Closed-form and abstract-chain references for the simulator.

use rand::SeedableRng;
use rand_distr::{Binomial, Distribution};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use crate::Error;

/// Expected interactions for the pairwise backup rule alone to go from `k0`
/// alive candidates to one, in a population of `n`.
///
/// With `k` alive candidates a step eliminates one with probability
/// `k(k-1) / (n(n-1))`, so the waits are geometric and sum to
/// `n(n-1)(1 - 1/k0)`.
pub fn backup_expected_interactions(n: u64, k0: u64) -> f64 {
    if k0 <= 1 {
        return 0.0;
    }
    let n = n as f64;
    n * (n - 1.0) * (1.0 - 1.0 / k0 as f64)
}

/// Empirical distribution of the number of rounds `B` the abstract
/// elimination chain needs to get from `F0` active candidates to one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundDistribution {
    pub f0: u32,
    pub samples: Vec<u32>,
}

impl RoundDistribution {
    pub fn mean(&self) -> f64 {
        self.samples.iter().map(|&b| b as f64).sum::<f64>() / self.samples.len().max(1) as f64
    }
}

/// Each round every candidate draws heads with probability `p`. If nobody
/// does the round is void; otherwise only the heads survive.
pub fn round_model_oracle(f0: u32, p: f64, trials: usize, seed: u64) -> Result<RoundDistribution, Error> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParams(format!("heads probability {p} outside (0, 1)")));
    }
    if f0 == 0 {
        return Err(Error::InvalidParams("need at least one candidate".into()));
    }
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let samples = (0..trials).map(|_| chain_length(f0, p, &mut rng)).collect();
    Ok(RoundDistribution { f0, samples })
}

pub(crate) fn chain_length(f0: u32, p: f64, rng: &mut Xoshiro256PlusPlus) -> u32 {
    let mut f = f0 as u64;
    let mut b = 0;
    while f > 1 {
        let heads = Binomial::new(f, p).expect("p checked by caller").sample(rng);
        if heads > 0 {
            f = heads;
        }
        b += 1;
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        assert_eq!(backup_expected_interactions(64, 64), 3969.0);
        assert_eq!(backup_expected_interactions(128, 128), 16129.0);
        assert_eq!(backup_expected_interactions(10, 2), 45.0);
        assert_eq!(backup_expected_interactions(10, 1), 0.0);
    }

    #[test]
    fn single_candidate_needs_no_rounds() {
        let d = round_model_oracle(1, 0.25, 50, 3).unwrap();
        assert!(d.samples.iter().all(|&b| b == 0));
        assert!(round_model_oracle(4, 1.0, 1, 0).is_err());
        assert!(round_model_oracle(0, 0.5, 1, 0).is_err());
    }
}
