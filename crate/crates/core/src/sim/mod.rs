//! Scheduler, population lifecycle, stepping loop and stabilisation detection.

pub mod batch;
pub mod census;
pub mod engine;
pub mod record;
pub mod seed;
pub mod stop;
pub mod timeline;
pub mod trace;

pub use batch::{default_workers, run_batch, run_trial, BatchSpec};
pub use census::Census;
pub use engine::{SimOptions, SimState, Status};
pub use record::{EpochBoundaries, Snapshot, TrialOutcome, TrialRecord};
pub use seed::trial_seed;
pub use stop::StopCondition;
pub use timeline::{RoundRecord, RoundTimeline};
pub use trace::{EventKind, EventLog, JsonLinesTrace, NoTrace, Observer, TraceEvent};
