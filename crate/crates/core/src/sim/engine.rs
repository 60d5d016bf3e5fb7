//! Uniform random scheduler and the stepping loop.

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use super::census::Census;
use super::record::{EpochBoundaries, Snapshot, TrialOutcome, TrialRecord};
use super::stop::{StopCondition, StopProbe};
use super::timeline::{PassOutcome, RoundTracker};
use super::trace::{EventKind, Observer, TraceEvent};
use crate::protocol::{
    gamma_schedule, interact, AgentState, InteractionClass, LeaderMode, LeaderState, ProtocolParams, Role, RoleState,
};
use crate::Error;

/// Engine settings that do not affect the trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimOptions {
    /// A silence of `round_gap_factor * n` interactions without any pass
    /// through 0 separates two global rounds.
    pub round_gap_factor: f64,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self { round_gap_factor: 4.0 }
    }
}

/// Stabilisation status as seen by an omniscient observer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Status {
    pub alive: u32,
    pub active: u32,
    pub stabilized: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
struct Progress {
    single_active_at: Option<u64>,
    single_alive_at: Option<u64>,
    resolved_at: Option<u64>,
    epoch1_end: Option<u64>,
    epoch2_end: Option<u64>,
    epoch2_survivors: Option<u32>,
    drag_first_active: Vec<Option<u64>>,
    safety_violation_at: Option<u64>,
    first_round: Option<Snapshot>,
}

/// One population under simulation.
#[derive(Debug, Clone)]
pub struct SimState {
    params: ProtocolParams,
    seed: u64,
    agents: Vec<AgentState>,
    interactions: u64,
    rng: Xoshiro256PlusPlus,
    responder_dist: Uniform<u32>,
    initiator_dist: Uniform<u32>,
    census: Census,
    progress: Progress,
    rounds: RoundTracker,
}

/// Interval, in interactions, between census self-checks in debug builds.
#[cfg(debug_assertions)]
const CENSUS_CHECK_MASK: u64 = (1 << 20) - 1;

impl SimState {
    /// Fresh population: every agent in the uniform initial state, or every
    /// agent an active leader when `backup_only` is set.
    pub fn new(params: ProtocolParams, seed: u64) -> Result<Self, Error> {
        Self::with_options(params, seed, SimOptions::default())
    }

    pub fn with_options(params: ProtocolParams, seed: u64, options: SimOptions) -> Result<Self, Error> {
        params.validate()?;
        if !options.round_gap_factor.is_finite() || options.round_gap_factor <= 0.0 {
            return Err(Error::InvalidParams("round gap factor must be positive".into()));
        }
        let n = params.n as usize;
        let init = if params.backup_only {
            AgentState::with_body(RoleState::Leader(LeaderState::fresh(params.cnt_start())))
        } else {
            AgentState::INITIAL
        };
        let agents = vec![init; n];
        let census = Census::scan(&agents, &params);
        let gap = (options.round_gap_factor * n as f64).ceil() as u64;
        let mut progress = Progress {
            drag_first_active: vec![None; params.psi as usize + 1],
            ..Progress::default()
        };
        if params.backup_only {
            progress.drag_first_active[0] = Some(0);
        }
        Ok(Self {
            params,
            seed,
            agents,
            interactions: 0,
            rng: Xoshiro256PlusPlus::seed_from_u64(seed),
            responder_dist: Uniform::new(0, params.n),
            initiator_dist: Uniform::new(0, params.n - 1),
            census,
            progress,
            rounds: RoundTracker::new(n, gap),
        })
    }

    /// Start from an explicit configuration. Used for targeted tests and the
    /// C interface; the trajectory is still driven by `seed`.
    pub fn from_agents(params: ProtocolParams, agents: Vec<AgentState>, seed: u64) -> Result<Self, Error> {
        params.validate()?;
        if agents.len() != params.n as usize {
            return Err(Error::InvalidParams(format!(
                "expected {} agents, got {}",
                params.n,
                agents.len()
            )));
        }
        let mut s = Self::new(params, seed)?;
        s.census = Census::scan(&agents, &params);
        s.agents = agents;
        s.progress.drag_first_active = vec![None; params.psi as usize + 1];
        for a in &s.agents {
            if let RoleState::Leader(l) = a.body {
                if l.leadermode == LeaderMode::A {
                    s.progress.drag_first_active[l.drag as usize] = Some(0);
                }
            }
        }
        Ok(s)
    }

    pub fn params(&self) -> &ProtocolParams {
        &self.params
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn agents(&self) -> &[AgentState] {
        &self.agents
    }

    pub fn interactions(&self) -> u64 {
        self.interactions
    }

    pub fn parallel_time(&self) -> f64 {
        self.interactions as f64 / self.params.n as f64
    }

    pub fn census(&self) -> &Census {
        &self.census
    }

    pub fn rounds(&self) -> &RoundTracker {
        &self.rounds
    }

    pub fn safety_violated(&self) -> bool {
        self.progress.safety_violation_at.is_some()
    }

    /// Draw an ordered pair `(responder, initiator)` of distinct agents,
    /// uniform over all `n(n-1)` ordered pairs.
    #[inline]
    pub fn draw_pair(&mut self) -> (usize, usize) {
        let r = self.responder_dist.sample(&mut self.rng);
        let mut i = self.initiator_dist.sample(&mut self.rng);
        if i >= r {
            i += 1;
        }
        (r as usize, i as usize)
    }

    pub fn step(&mut self) {
        self.step_with(&mut super::trace::NoTrace);
    }

    /// One interaction. Returns whether any agent's role payload changed.
    #[inline]
    pub fn step_with<O: Observer>(&mut self, obs: &mut O) -> bool {
        let (r, i) = self.draw_pair();
        let a = self.agents[r];
        let b = self.agents[i];
        let out = interact(a, b, &self.params);
        self.agents[r] = out.responder;
        self.agents[i] = out.initiator;
        self.interactions += 1;
        let t = self.interactions;

        if let Some(idx) = self.rounds.maybe_close(t) {
            self.on_round_closed(idx, t);
        }
        if out.class == InteractionClass::Pass0 {
            self.on_pass(r, t, out.responder.clock.phase, obs);
        }

        let mut changed = false;
        if a.body != out.responder.body {
            self.on_change(r, &a.body, &out.responder.body, t, obs);
            changed = true;
        }
        if b.body != out.initiator.body {
            self.on_change(i, &b.body, &out.initiator.body, t, obs);
            changed = true;
        }
        if changed {
            self.after_change(t, obs);
        }

        #[cfg(debug_assertions)]
        if t & CENSUS_CHECK_MASK == 0 {
            debug_assert_eq!(self.census, Census::scan(&self.agents, &self.params), "census drift at {t}");
        }
        changed
    }

    fn on_pass<O: Observer>(&mut self, agent: usize, t: u64, phase: u8, obs: &mut O) {
        if obs.wants_round_boundaries() {
            obs.on_event(&TraceEvent {
                kind: EventKind::RoundBoundary,
                interaction: t,
                agent: agent as u32,
                value: phase as u32,
            });
        }
        if let PassOutcome::NewRound(index) = self.rounds.on_pass(agent, t) {
            let c = &self.census;
            let (alive, active) = (c.alive(), c.active());
            let alive_nonvoid = c.alive_nonvoid;
            let level = c.dominant_active_cnt().and_then(|cnt| gamma_schedule(cnt, self.params.phi));
            let rounds = &mut self.rounds.rounds;
            let len = rounds.len();
            if len >= 2 {
                let prev = &mut rounds[len - 2];
                prev.end = Some(t);
                prev.alive_end = Some(alive);
                prev.active_end = Some(active);
                prev.void_fraction_end = (alive > 0).then(|| 1.0 - alive_nonvoid as f64 / alive as f64);
                prev.coin_level = level;
            }
            let cur = &mut rounds[len - 1];
            cur.alive_start = alive;
            cur.active_start = active;
            if index == 1 && !self.params.backup_only {
                self.progress.epoch1_end = Some(t);
                obs.on_event(&TraceEvent {
                    kind: EventKind::EpochTransition,
                    interaction: t,
                    agent: agent as u32,
                    value: 1,
                });
            }
        }
    }

    fn on_round_closed(&mut self, index: u32, t: u64) {
        if index == 1 && self.progress.first_round.is_none() {
            self.progress.first_round = Some(Snapshot {
                interaction: t,
                census: self.census.clone(),
            });
        }
    }

    #[inline]
    fn on_change<O: Observer>(&mut self, agent: usize, old: &RoleState, new: &RoleState, t: u64, obs: &mut O) {
        self.census.replace(old, new);
        let RoleState::Leader(l) = new else {
            return;
        };
        let was = match old {
            RoleState::Leader(o) => Some(o),
            _ => None,
        };
        if l.leadermode == LeaderMode::A {
            let slot = &mut self.progress.drag_first_active[l.drag as usize];
            if slot.is_none() {
                *slot = Some(t);
            }
            if let Some(o) = was {
                if o.leadermode == LeaderMode::A && l.drag > o.drag {
                    obs.on_event(&TraceEvent {
                        kind: EventKind::DragAdvance,
                        interaction: t,
                        agent: agent as u32,
                        value: l.drag as u32,
                    });
                }
            }
        }
        if let Some(o) = was {
            if o.leadermode.is_alive() && l.leadermode == LeaderMode::W {
                obs.on_event(&TraceEvent {
                    kind: EventKind::Elimination,
                    interaction: t,
                    agent: agent as u32,
                    value: self.census.alive(),
                });
            }
        }
    }

    fn after_change<O: Observer>(&mut self, t: u64, obs: &mut O) {
        let c = &self.census;
        let settled = c.roles[Role::Zero as usize] < 2;
        let (alive, active) = (c.alive(), c.active());
        let p = &mut self.progress;
        if settled {
            if active == 1 && p.single_active_at.is_none() {
                p.single_active_at = Some(t);
            }
            if alive == 1 && p.single_alive_at.is_none() {
                p.single_alive_at = Some(t);
            }
            if alive == 1 && active == 1 && p.resolved_at.is_none() {
                p.resolved_at = Some(t);
            }
        }
        if !self.params.backup_only && p.epoch2_end.is_none() && c.leaders() > 0 && c.active_counting() == 0 {
            p.epoch2_end = Some(t);
            p.epoch2_survivors = Some(active);
            obs.on_event(&TraceEvent {
                kind: EventKind::EpochTransition,
                interaction: t,
                agent: 0,
                value: 2,
            });
        }
        if c.leaders() > 0 && alive == 0 && p.safety_violation_at.is_none() {
            p.safety_violation_at = Some(t);
            obs.on_event(&TraceEvent {
                kind: EventKind::SafetyViolation,
                interaction: t,
                agent: 0,
                value: 0,
            });
        }
    }

    /// Omniscient stabilisation check. Not something the agents can observe.
    pub fn detect_stabilization(&self) -> Status {
        let c = &self.census;
        Status {
            alive: c.alive(),
            active: c.active(),
            stabilized: c.alive() == 1 && c.roles[Role::Zero as usize] < 2,
        }
    }

    /// Step until `cond` first holds, the alive count hits zero, or an
    /// interaction limit in the condition is spent.
    pub fn run_until<O: Observer>(&mut self, cond: &StopCondition, obs: &mut O) -> Result<TrialRecord, Error> {
        cond.validate()?;
        let mut limits = Vec::new();
        cond.limits(&mut limits);
        let outcome = loop {
            if self.safety_violated() {
                break TrialOutcome::SafetyViolation;
            }
            if cond.holds(self, false) {
                break TrialOutcome::Reached;
            }
            if cond.holds(self, true) {
                break TrialOutcome::Exhausted;
            }
            let next_limit = limits
                .iter()
                .copied()
                .filter(|&m| m > self.interactions)
                .min()
                .unwrap_or(u64::MAX);
            // Conditions only change when a payload changes, a round closes
            // or a limit is hit, so the inner loop skips the checks otherwise.
            loop {
                let closing = self.interactions + 1 >= self.rounds.close_deadline;
                if self.step_with(obs) || closing || self.interactions >= next_limit {
                    break;
                }
            }
        };
        Ok(self.record(outcome))
    }

    pub fn record(&self, outcome: TrialOutcome) -> TrialRecord {
        let p = &self.progress;
        // Stabilising inside epoch 2 leaves epoch 3 empty.
        let epoch3_end = p.epoch2_end.zip(p.single_alive_at).map(|(e2, s)| e2.max(s));
        TrialRecord {
            seed: self.seed,
            params: self.params,
            outcome,
            interactions: self.interactions,
            parallel_time: self.parallel_time(),
            single_active_at: p.single_active_at,
            single_alive_at: p.single_alive_at,
            resolved_at: p.resolved_at,
            epochs: EpochBoundaries {
                epoch1_end: p.epoch1_end,
                epoch2_end: p.epoch2_end,
                epoch3_end,
            },
            epoch2_survivors: p.epoch2_survivors,
            drag_first_active: p.drag_first_active.clone(),
            first_round: p.first_round.clone(),
            timeline: self.rounds.rounds.clone(),
            final_census: self.census.clone(),
        }
    }
}

impl StopProbe for SimState {
    fn single_alive(&self) -> bool {
        self.detect_stabilization().stabilized
    }

    fn single_active(&self) -> bool {
        let c = &self.census;
        c.roles[Role::Zero as usize] < 2 && c.active() == 1
    }

    fn resolved(&self) -> bool {
        self.single_alive() && self.census.active() == 1
    }

    fn first_round_done(&self) -> bool {
        self.progress.first_round.is_some()
    }

    fn epoch2_done(&self) -> bool {
        self.progress.epoch2_end.is_some()
    }

    fn drag_reached(&self, level: u8) -> bool {
        self.progress
            .drag_first_active
            .get(level as usize)
            .is_some_and(Option::is_some)
    }

    fn interactions(&self) -> u64 {
        self.interactions
    }
}

impl PartialEq for SimState {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params
            && self.seed == other.seed
            && self.agents == other.agents
            && self.interactions == other.interactions
            && self.rng == other.rng
            && self.census == other.census
            && self.progress == other.progress
    }
}
