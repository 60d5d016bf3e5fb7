//! Simulation engine and experiment harness for a leader-election population
//! protocol with `O(log log n)` states per agent.
//!
//! Agents split into coins, inhibitors and leader candidates. Coins form a
//! junta that drives a modular phase clock and double as biased synthetic
//! coins; leader candidates eliminate each other over clocked rounds, with a
//! slowly ticking `drag` counter (gated by inhibitors) making the final
//! elimination safe, and a pairwise backup rule guaranteeing that exactly one
//! leader is always elected.

pub mod analytics;
pub mod cli;
pub mod protocol;
pub mod sim;
pub mod validate;

mod error;

pub use error::Error;
pub use protocol::{interact, AgentState, ProtocolParams};
pub use sim::{SimState, StopCondition, TrialRecord};

/// Version string embedded in every output record.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
