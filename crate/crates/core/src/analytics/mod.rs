//! Measurements over finished or paused trials, aggregation across trials,
//! and reference oracles.

pub mod aggregate;
pub mod epochs;
pub mod export;
pub mod histogram;
pub mod oracle;
pub mod stats;

pub use aggregate::{aggregate, AggregateStats};
pub use epochs::{epoch2_rounds, epoch2_survivor_count, epoch3_rounds, epoch_boundaries};
pub use histogram::{coin_census, drag_census, LevelHistogram};
pub use oracle::{backup_expected_interactions, round_model_oracle, RoundDistribution};
pub use stats::{chi_square_uniform, mann_whitney, Summary, TestResult};
