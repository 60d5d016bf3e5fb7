//! Output records. Every record carries the crate version, the effective
//! configuration and the seed, which is enough to replay it.

use std::fmt::Display;
use std::io::Write;

use serde::{Serialize, Serializer};

use super::Format;
use crate::analytics::AggregateStats;
use crate::protocol::InhibitorDragRule;
use crate::sim::{StopCondition, TrialOutcome, TrialRecord};
use crate::validate::CriterionReport;
use crate::{Error, VERSION};

/// Bumped whenever a field is renamed or removed.
pub const SCHEMA: u32 = 1;

pub(crate) fn display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn drag_rule_name(r: InhibitorDragRule) -> &'static str {
    match r {
        InhibitorDragRule::AdvanceOnCoin => "advance-on-coin",
        InhibitorDragRule::AdvanceOnNonCoin => "advance-on-noncoin",
    }
}

#[derive(Debug, Serialize)]
pub struct TrialRow {
    pub version: &'static str,
    pub n: u32,
    pub gamma: u16,
    pub phi: u8,
    pub psi: u8,
    pub backup_only: bool,
    pub drag_rule: &'static str,
    pub seniority_uses_cnt: bool,
    pub drag_advance_any_epoch: bool,
    pub stop: String,
    pub seed: u64,
    pub outcome: TrialOutcome,
    pub interactions: u64,
    pub parallel_time: f64,
    pub single_active_time: Option<f64>,
    pub stabilization_time: Option<f64>,
    pub resolved_time: Option<f64>,
    pub epoch1_end: Option<f64>,
    pub epoch2_end: Option<f64>,
    pub epoch3_end: Option<f64>,
    pub epoch2_survivors: Option<u32>,
    pub rounds: usize,
    pub final_alive: u32,
    pub final_active: u32,
}

impl TrialRow {
    pub fn new(r: &TrialRecord, stop: &StopCondition) -> Self {
        let n = r.params.n as f64;
        let pt = |t: Option<u64>| t.map(|t| t as f64 / n);
        Self {
            version: VERSION,
            n: r.params.n,
            gamma: r.params.gamma,
            phi: r.params.phi,
            psi: r.params.psi,
            backup_only: r.params.backup_only,
            drag_rule: drag_rule_name(r.params.inhibitor_drag_rule),
            seniority_uses_cnt: r.params.seniority_uses_cnt,
            drag_advance_any_epoch: r.params.drag_advance_any_epoch,
            stop: stop.to_string(),
            seed: r.seed,
            outcome: r.outcome,
            interactions: r.interactions,
            parallel_time: r.parallel_time,
            single_active_time: pt(r.single_active_at),
            stabilization_time: pt(r.single_alive_at),
            resolved_time: pt(r.resolved_at),
            epoch1_end: pt(r.epochs.epoch1_end),
            epoch2_end: pt(r.epochs.epoch2_end),
            epoch3_end: pt(r.epochs.epoch3_end),
            epoch2_survivors: r.epoch2_survivors,
            rounds: r.timeline.len(),
            final_alive: r.final_census.alive(),
            final_active: r.final_census.active(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AggregateRow {
    pub version: &'static str,
    pub n: u32,
    pub gamma: u16,
    pub phi: u8,
    pub psi: u8,
    pub backup_only: bool,
    pub drag_rule: &'static str,
    pub seed: u64,
    pub trials: usize,
    pub reached: usize,
    pub exhausted: usize,
    pub safety_violations: usize,
    pub stabilized: usize,
    pub median_time: Option<f64>,
    pub mean_time: Option<f64>,
    pub q05_time: Option<f64>,
    pub q95_time: Option<f64>,
    pub time_per_log2n: Option<f64>,
    pub time_per_log2n_loglog2n: Option<f64>,
    pub time_per_log2n_sq: Option<f64>,
    pub median_epoch2_survivors: Option<f64>,
    pub mean_interactions: f64,
}

impl AggregateRow {
    pub fn new(s: &AggregateStats, seed: u64) -> Self {
        let l = (s.params.n as f64).log2();
        let median = s.stabilization_time.map(|t| t.median);
        Self {
            version: VERSION,
            n: s.params.n,
            gamma: s.params.gamma,
            phi: s.params.phi,
            psi: s.params.psi,
            backup_only: s.params.backup_only,
            drag_rule: drag_rule_name(s.params.inhibitor_drag_rule),
            seed,
            trials: s.trials,
            reached: s.reached,
            exhausted: s.exhausted,
            safety_violations: s.safety_violations,
            stabilized: s.stabilization_time.map_or(0, |t| t.count),
            median_time: median,
            mean_time: s.stabilization_time.map(|t| t.mean),
            q05_time: s.stabilization_time.map(|t| t.q05),
            q95_time: s.stabilization_time.map(|t| t.q95),
            time_per_log2n: median.map(|m| m / l),
            time_per_log2n_loglog2n: median.filter(|_| l > 1.0).map(|m| m / (l * l.log2())),
            time_per_log2n_sq: median.map(|m| m / (l * l)),
            median_epoch2_survivors: s.epoch2_survivors.map(|t| t.median),
            mean_interactions: s.interactions.mean,
        }
    }
}

#[derive(Serialize)]
struct Line<'a, S: Serialize, D: Serialize> {
    #[serde(rename = "type")]
    kind: &'static str,
    schema: u32,
    version: &'static str,
    config: &'a serde_json::Value,
    summary: &'a S,
    detail: &'a D,
}

#[derive(Serialize)]
struct CriterionRow<'a> {
    version: &'static str,
    tolerances_version: u32,
    id: u8,
    name: &'a str,
    passed: bool,
    detail: &'a str,
}

enum Sink<'a> {
    Csv(Box<csv::Writer<&'a mut dyn Write>>),
    Lines(&'a mut dyn Write),
}

/// Writes one record per call in the chosen format.
pub struct Emitter<'a> {
    sink: Sink<'a>,
}

impl<'a> Emitter<'a> {
    pub fn new(format: Format, out: &'a mut dyn Write) -> Self {
        let sink = match format {
            Format::Csv => Sink::Csv(Box::new(csv::Writer::from_writer(out))),
            Format::Lines => Sink::Lines(out),
        };
        Self { sink }
    }

    fn emit<S: Serialize, D: Serialize>(
        &mut self,
        kind: &'static str,
        summary: &S,
        config: &serde_json::Value,
        detail: &D,
    ) -> Result<(), Error> {
        match &mut self.sink {
            Sink::Csv(w) => {
                w.serialize(summary)?;
                w.flush()?;
            }
            Sink::Lines(w) => {
                let line = Line {
                    kind,
                    schema: SCHEMA,
                    version: VERSION,
                    config,
                    summary,
                    detail,
                };
                serde_json::to_writer(&mut *w, &line)?;
                w.write_all(b"\n")?;
                w.flush()?;
            }
        }
        Ok(())
    }

    pub fn trial(&mut self, row: &TrialRow, config: &serde_json::Value, record: &TrialRecord) -> Result<(), Error> {
        self.emit("trial", row, config, record)
    }

    pub fn aggregate(&mut self, row: &AggregateRow, config: &serde_json::Value, stats: &AggregateStats) -> Result<(), Error> {
        self.emit("aggregate", row, config, stats)
    }

    pub fn criterion(&mut self, r: &CriterionReport, config: &serde_json::Value, tolerances_version: u32) -> Result<(), Error> {
        let row = CriterionRow {
            version: VERSION,
            tolerances_version,
            id: r.id,
            name: &r.name,
            passed: r.passed,
            detail: &r.detail,
        };
        self.emit("criterion", &row, config, &())
    }
}
