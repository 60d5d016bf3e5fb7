//! Pure transition logic: state types, clock arithmetic and rules.

pub mod clock;
pub mod params;
pub mod pipeline;
pub mod rules;
pub mod state;

pub use clock::{clock_update, mod_add, mod_max, InteractionClass};
pub use params::{InhibitorDragRule, ProtocolParams};
pub use pipeline::{interact, interact_with_order, Interaction, Stage, CANONICAL_ORDER};
pub use rules::{gamma_schedule, seniority_compare};
pub use state::{
    AgentState, ClockState, CoinState, Elevation, Flip, InhibitorState, LeaderMode, LeaderState, Mode, Role,
    RoleState, TimeMode,
};
