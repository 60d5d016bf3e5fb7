//! Acceptance suite: every criterion as an executable check, shared by the
//! `validate` subcommand and the `acceptance` test target.

pub mod tolerances;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use crate::analytics::oracle::chain_length;
use crate::analytics::{
    backup_expected_interactions, chi_square_uniform, epoch2_survivor_count, epoch3_rounds, mann_whitney,
    round_model_oracle, stats::median, LevelHistogram,
};
use crate::protocol::{InhibitorDragRule, ProtocolParams, Role};
use crate::sim::{run_batch, trial_seed, BatchSpec, NoTrace, SimOptions, SimState, StopCondition, TrialRecord};
use crate::Error;
pub use tolerances::{Slack, Tolerances};

/// Identifiers and short names of every criterion, in suite order.
pub const CRITERIA: [(u8, &str); 11] = [
    (1, "uniqueness-and-safety"),
    (2, "backup-oracle"),
    (3, "role-split"),
    (4, "coin-cascade"),
    (5, "junta-size"),
    (6, "inhibitor-histogram"),
    (7, "fast-elimination"),
    (8, "scaling"),
    (9, "drag-slowdown"),
    (10, "round-model"),
    (11, "determinism-and-uniformity"),
];

pub fn criterion_name(id: u8) -> Option<&'static str> {
    CRITERIA.iter().find(|c| c.0 == id).map(|c| c.1)
}

/// Parse a selection such as `1,3,5-7` or `all`.
pub fn parse_selection(s: &str) -> Result<Vec<u8>, Error> {
    let s = s.trim();
    if s == "all" {
        return Ok(CRITERIA.iter().map(|c| c.0).collect());
    }
    let bad = || Error::Config(format!("bad criterion selection '{s}'"));
    let mut ids = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (lo, hi) = match part.split_once('-') {
            Some((a, b)) => (a.parse::<u8>().map_err(|_| bad())?, b.parse::<u8>().map_err(|_| bad())?),
            None => {
                let v = part.parse::<u8>().map_err(|_| bad())?;
                (v, v)
            }
        };
        for id in lo..=hi {
            if criterion_name(id).is_none() {
                return Err(Error::Config(format!("no criterion {id}")));
            }
            if !ids.contains(&id) {
                ids.push(id);
            }
        }
    }
    if ids.is_empty() {
        return Err(Error::Config("empty criterion selection".into()));
    }
    ids.sort_unstable();
    Ok(ids)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub criteria: Vec<u8>,
    pub drag_rule: InhibitorDragRule,
    pub drag_advance_any_epoch: bool,
    pub workers: usize,
    pub tolerances: Tolerances,
    /// Print one line per finished batch to stderr.
    pub progress: bool,
}

impl SuiteConfig {
    pub fn new(criteria: Vec<u8>, workers: usize) -> Self {
        Self {
            criteria,
            drag_rule: InhibitorDragRule::default(),
            drag_advance_any_epoch: false,
            workers,
            tolerances: Tolerances::builtin(),
            progress: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {:>2} {:<28} {verdict}  {}", self.id, self.name, self.detail)
    }
}

// Acceptance bands. Any widening comes from the tolerance file's slack.
const PASS_FRACTION: f64 = 0.95;
const BACKUP_REL: f64 = 0.05;
const ROLE_SPLIT_FACTOR: f64 = 5.0;
const CASCADE_LO: f64 = 0.45;
const CASCADE_HI: f64 = 1.1;
const CASCADE_EXP: f64 = 2.0 / 3.0;
const CASCADE_N_LOG: u32 = 18;
const CASCADE_PHI: u8 = 2;
const JUNTA_LO: f64 = 0.45;
const JUNTA_HI: f64 = 0.77;
const INHIBITOR_REL: f64 = 0.25;
const DRAG_RATIO: (f64, f64) = (2.0, 8.0);
const ROUND_MODEL_STEP: f64 = 1.5;
const ROUND_MODEL_F0: [u32; 6] = [8, 16, 32, 64, 128, 256];
const ROUND_MODEL_P: f64 = 0.25;
const ROUND_MODEL_ALPHA: f64 = 0.05;
const SCALING_RATIO: f64 = 2.0;
const UNIFORMITY_P: f64 = 0.001;
const MAIN_N_LOG: u32 = 16;

fn log2(n: u32) -> f64 {
    (n as f64).log2()
}

/// Runs criteria, sharing trial batches between the ones that read the same
/// population size and stop condition.
pub struct Suite {
    cfg: SuiteConfig,
    cache: HashMap<String, Arc<Vec<TrialRecord>>>,
}

impl Suite {
    pub fn new(cfg: SuiteConfig) -> Result<Self, Error> {
        if cfg.criteria.is_empty() {
            return Err(Error::Config("empty criterion selection".into()));
        }
        if let Some(bad) = cfg.criteria.iter().find(|&&id| criterion_name(id).is_none()) {
            return Err(Error::Config(format!("no criterion {bad}")));
        }
        Ok(Self {
            cfg,
            cache: HashMap::new(),
        })
    }

    pub fn run(&mut self) -> Result<Vec<CriterionReport>, Error> {
        let ids = self.cfg.criteria.clone();
        ids.into_iter().map(|id| self.run_one(id)).collect()
    }

    pub fn run_one(&mut self, id: u8) -> Result<CriterionReport, Error> {
        let (passed, detail) = match id {
            1 => self.uniqueness()?,
            2 => self.backup_oracle()?,
            3 => self.role_split()?,
            4 => self.coin_cascade()?,
            5 => self.junta_size()?,
            6 => self.inhibitor_histogram()?,
            7 => self.fast_elimination()?,
            8 => self.scaling()?,
            9 => self.drag_slowdown()?,
            10 => self.round_model()?,
            11 => self.determinism()?,
            _ => return Err(Error::Config(format!("no criterion {id}"))),
        };
        Ok(CriterionReport {
            id,
            name: criterion_name(id).unwrap_or_default().to_string(),
            passed,
            detail,
        })
    }

    fn tol(&self) -> &Tolerances {
        &self.cfg.tolerances
    }

    fn slack(&self) -> Slack {
        self.cfg.tolerances.slack
    }

    fn min_passes(&self, trials: usize) -> usize {
        ((PASS_FRACTION - self.slack().pass_fraction) * trials as f64).ceil() as usize
    }

    fn params(&self, n_log: u32) -> ProtocolParams {
        ProtocolParams::new(1 << n_log)
            .with_inhibitor_drag_rule(self.cfg.drag_rule)
            .with_drag_advance_any_epoch(self.cfg.drag_advance_any_epoch)
    }

    fn budget(&self, n: u32) -> u64 {
        self.tol().budget_parallel_time * n as u64
    }

    fn batch(&mut self, params: ProtocolParams, stop: StopCondition, trials: usize) -> Result<Arc<Vec<TrialRecord>>, Error> {
        let spec = BatchSpec {
            params,
            stop: stop.with_budget(self.budget(params.n)),
            trials,
            master_seed: self.tol().seed,
            options: SimOptions::default(),
        };
        let key = format!("{spec:?}");
        if !self.cache.contains_key(&key) {
            let t0 = Instant::now();
            let records = run_batch(&spec, self.cfg.workers)?;
            if self.cfg.progress {
                eprintln!(
                    "  batch n={} stop={} trials={} ({:.1}s)",
                    params.n,
                    spec.stop,
                    trials,
                    t0.elapsed().as_secs_f64()
                );
            }
            self.cache.insert(key.clone(), Arc::new(records));
        }
        Ok(Arc::clone(&self.cache[&key]))
    }

    /// Runs to stabilisation. At the main size they continue until the
    /// surviving leader reaches the top drag value so drag timings are complete.
    fn full(&mut self, n_log: u32) -> Result<Arc<Vec<TrialRecord>>, Error> {
        let params = self.params(n_log);
        let stop = if n_log == MAIN_N_LOG {
            StopCondition::All(vec![StopCondition::SingleAlive, StopCondition::DragLevel(params.psi)])
        } else {
            StopCondition::SingleAlive
        };
        let trials = self.tol().trials;
        self.batch(params, stop, trials)
    }

    fn uniqueness(&mut self) -> Result<(bool, String), Error> {
        let mut ok = true;
        let mut parts = Vec::new();
        for n_log in [8, 10, 12, MAIN_N_LOG] {
            let recs = self.full(n_log)?;
            let elected = recs
                .iter()
                .filter(|r| r.single_alive_at.is_some() && r.final_census.alive() == 1)
                .count();
            let violations = recs
                .iter()
                .filter(|r| r.outcome == crate::sim::TrialOutcome::SafetyViolation)
                .count();
            ok &= elected == recs.len() && violations == 0;
            parts.push(format!("2^{n_log}: {elected}/{} elected, {violations} violations", recs.len()));
            if n_log == MAIN_N_LOG {
                let n = 1u64 << n_log;
                let fast = recs
                    .iter()
                    .filter(|r| r.single_alive_at.is_some_and(|t| t < 10_000 * n))
                    .count();
                parts.push(format!("{fast}/{} under 10^4 n", recs.len()));
            }
        }
        Ok((ok, parts.join("; ")))
    }

    fn backup_oracle(&mut self) -> Result<(bool, String), Error> {
        let tol = BACKUP_REL + self.slack().backup_mean;
        let trials = self.tol().backup_trials;
        let mut ok = true;
        let mut parts = Vec::new();
        for n in [64u32, 128] {
            let params = ProtocolParams::new(n).with_backup_only(true);
            let recs = self.batch(params, StopCondition::SingleAlive, trials)?;
            let reached = recs.iter().all(|r| r.single_alive_at.is_some());
            let mean = recs.iter().map(|r| r.interactions as f64).sum::<f64>() / recs.len() as f64;
            let expect = backup_expected_interactions(n as u64, n as u64);
            let rel = (mean - expect) / expect;
            ok &= reached && rel.abs() <= tol;
            parts.push(format!("n={n}: mean {mean:.1} vs {expect:.0} ({:+.2}%)", rel * 100.0));
        }
        Ok((ok, parts.join("; ")))
    }

    fn role_split(&mut self) -> Result<(bool, String), Error> {
        let n = 1u32 << MAIN_N_LOG;
        let width = (ROLE_SPLIT_FACTOR + self.slack().role_split) * n as f64 / log2(n);
        let quarter = n as f64 / 4.0;
        let recs = self.full(MAIN_N_LOG)?;
        let mut worst = 0.0f64;
        let passes = recs
            .iter()
            .filter(|r| {
                let Some(s) = &r.first_round else { return false };
                let c = &s.census;
                let coins = c.roles[Role::Coin as usize] as f64;
                let inhibitors = c.roles[Role::Inhibitor as usize] as f64;
                let idle = (c.roles[Role::Zero as usize] + c.roles[Role::X as usize] + c.roles[Role::D as usize]) as f64;
                let dev = (coins - quarter).abs().max((inhibitors - quarter).abs()).max(idle);
                worst = worst.max(dev);
                dev <= width
            })
            .count();
        let need = self.min_passes(recs.len());
        Ok((
            passes >= need,
            format!("{passes}/{} within {width:.0} (need {need}); worst deviation {worst:.0}", recs.len()),
        ))
    }

    fn coin_cascade(&mut self) -> Result<(bool, String), Error> {
        let s = self.slack().coin_cascade;
        let (lo, hi) = (CASCADE_LO - s, CASCADE_HI + s);
        let params = self.params(CASCADE_N_LOG).with_phi(CASCADE_PHI);
        let n = params.n as f64;
        let threshold = n.powf(CASCADE_EXP);
        let trials = self.tol().trials;
        let recs = self.batch(params, StopCondition::FirstRound, trials)?;
        let mut checked = 0usize;
        let mut ratios: Vec<f64> = Vec::new();
        let passes = recs
            .iter()
            .filter(|r| {
                let Some(snap) = &r.first_round else { return false };
                let h = LevelHistogram::coins_of(&snap.census);
                let mut ok = true;
                for l in 0..h.top() {
                    let c = h.at_least(l) as f64;
                    if c < threshold {
                        break;
                    }
                    let q = c / n;
                    let ratio = h.at_least(l + 1) as f64 / (q * q * n);
                    ratios.push(ratio);
                    checked += 1;
                    ok &= (lo..=hi).contains(&ratio);
                }
                ok
            })
            .count();
        let need = self.min_passes(recs.len());
        let (rmin, rmax) = ratios
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
        Ok((
            passes >= need && checked > 0,
            format!(
                "{passes}/{} trials in band (need {need}); {checked} level checks, C_(l+1)/(q^2 n) in [{rmin:.3}, {rmax:.3}]",
                recs.len()
            ),
        ))
    }

    fn junta_size(&mut self) -> Result<(bool, String), Error> {
        let s = self.slack().junta_exponent;
        let n = (1u32 << MAIN_N_LOG) as f64;
        let (lo, hi) = (n.powf(JUNTA_LO - s), n.powf(JUNTA_HI + s));
        let recs = self.full(MAIN_N_LOG)?;
        let sizes: Vec<f64> = recs
            .iter()
            .filter_map(|r| r.first_round.as_ref())
            .map(|snap| {
                let h = LevelHistogram::coins_of(&snap.census);
                h.at_least(h.top()) as f64
            })
            .collect();
        let passes = sizes.iter().filter(|&&c| (lo..=hi).contains(&c)).count();
        let need = self.min_passes(recs.len());
        let med = median(&sizes).unwrap_or(f64::NAN);
        Ok((
            passes >= need,
            format!(
                "{passes}/{} in [{lo:.0}, {hi:.0}] (need {need}); median C_phi {med:.0}",
                recs.len()
            ),
        ))
    }

    fn inhibitor_trial_ok(&self, r: &TrialRecord) -> bool {
        let tol = INHIBITOR_REL + self.slack().inhibitor;
        let Some(snap) = &r.first_round else { return false };
        let h = LevelHistogram::drags_of(&snap.census);
        let n_i = h.population() as f64;
        (1..=3).all(|l| {
            let expect = n_i * 4f64.powi(-(l as i32));
            (h.at_least(l) as f64 - expect).abs() <= tol * expect
        })
    }

    fn inhibitor_summary(recs: &[TrialRecord]) -> String {
        let mut fr = [Vec::new(), Vec::new(), Vec::new()];
        let mut stopped = 0;
        for r in recs {
            if let Some(snap) = &r.first_round {
                let h = LevelHistogram::drags_of(&snap.census);
                let n_i = h.population().max(1) as f64;
                for (l, v) in fr.iter_mut().enumerate() {
                    v.push(h.at_least(l + 1) as f64 / n_i);
                }
                stopped += usize::from(h.all_stopped());
            }
        }
        let meds: Vec<String> = fr
            .iter()
            .map(|v| format!("{:.4}", median(v).unwrap_or(f64::NAN)))
            .collect();
        format!("median D'_1..3/n_I [{}], all stopped in {stopped}", meds.join(", "))
    }

    fn inhibitor_histogram(&mut self) -> Result<(bool, String), Error> {
        let recs = self.full(MAIN_N_LOG)?;
        let need = self.min_passes(recs.len());
        let passes = recs.iter().filter(|r| self.inhibitor_trial_ok(r)).count();
        let main_ok = passes >= need;
        let mut detail = format!(
            "{:?}: {passes}/{} within band (need {need}), {}",
            self.cfg.drag_rule,
            recs.len(),
            Self::inhibitor_summary(&recs)
        );
        if self.cfg.drag_rule == InhibitorDragRule::AdvanceOnNonCoin {
            return Ok((main_ok, detail));
        }
        // The printed advance-on-non-coin rule must visibly miss the band.
        let params = self
            .params(MAIN_N_LOG)
            .with_inhibitor_drag_rule(InhibitorDragRule::AdvanceOnNonCoin);
        let trials = self.tol().trials;
        let control = self.batch(params, StopCondition::FirstRound, trials)?;
        let control_passes = control.iter().filter(|r| self.inhibitor_trial_ok(r)).count();
        detail.push_str(&format!(
            "; control AdvanceOnNonCoin: {control_passes}/{} within band, {}",
            control.len(),
            Self::inhibitor_summary(&control)
        ));
        Ok((main_ok && control_passes < need, detail))
    }

    fn fast_elimination(&mut self) -> Result<(bool, String), Error> {
        let mut ratios = Vec::new();
        let mut parts = Vec::new();
        for n_log in [14u32, MAIN_N_LOG, 18] {
            let recs = if n_log == 18 {
                let params = self.params(n_log);
                let stop = StopCondition::Composite(vec![StopCondition::Epoch2End, StopCondition::SingleAlive]);
                let trials = self.tol().trials;
                self.batch(params, stop, trials)?
            } else {
                self.full(n_log)?
            };
            let survivors: Vec<f64> = recs.iter().filter_map(epoch2_survivor_count).map(f64::from).collect();
            let med = median(&survivors).unwrap_or(f64::NAN);
            let ratio = med / n_log as f64;
            parts.push(format!("2^{n_log}: median {med} ({ratio:.4} per log2 n, {} trials)", survivors.len()));
            ratios.push(ratio);
        }
        let ok = ratios.windows(2).all(|w| w[1] <= w[0]);
        Ok((ok, parts.join("; ")))
    }

    fn scaling(&mut self) -> Result<(bool, String), Error> {
        let mut sq = Vec::new();
        let mut ll = Vec::new();
        let mut parts = Vec::new();
        for n_log in 10u32..=17 {
            let recs = self.full(n_log)?;
            let times: Vec<f64> = recs.iter().filter_map(|r| r.stabilization_time()).collect();
            let med = median(&times).unwrap_or(f64::NAN);
            let l = n_log as f64;
            sq.push(med / (l * l));
            ll.push(med / (l * l.log2()));
            parts.push(format!("2^{n_log}: {med:.1}"));
        }
        let decreasing = sq.windows(2).all(|w| w[1] < w[0]);
        let (lo, hi) = ll
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
        let spread = hi / lo;
        let bound = SCALING_RATIO + self.slack().scaling_ratio;
        let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.2}")).collect::<Vec<_>>().join(" ");
        Ok((
            decreasing && spread <= bound,
            format!(
                "median time {}; time/log2^2 n [{}] {}; time/(log n loglog n) [{}] max/min {spread:.2} (bound {bound})",
                parts.join(", "),
                fmt(&sq),
                if decreasing { "decreasing" } else { "NOT decreasing" },
                fmt(&ll)
            ),
        ))
    }

    fn drag_slowdown(&mut self) -> Result<(bool, String), Error> {
        let f = 1.0 + self.slack().drag_ratio;
        let (lo, hi) = (DRAG_RATIO.0 / f, DRAG_RATIO.1 * f);
        let recs = self.full(MAIN_N_LOG)?;
        let mut ok = true;
        let mut parts = Vec::new();
        for l in 0..3 {
            let ratios: Vec<f64> = recs
                .iter()
                .filter_map(|r| {
                    let a = r.drag_interarrival(l)?;
                    let b = r.drag_interarrival(l + 1)?;
                    (a > 0).then(|| b as f64 / a as f64)
                })
                .collect();
            let med = median(&ratios).unwrap_or(f64::NAN);
            ok &= (lo..=hi).contains(&med);
            parts.push(format!("T_{}/T_{l}: median {med:.2} over {} trials", l + 1, ratios.len()));
        }
        let n = recs.first().map_or(1.0, |r| r.params.n as f64);
        let medians: Vec<String> = (0..4)
            .map(|l| {
                let v: Vec<f64> = recs.iter().filter_map(|r| r.drag_interarrival(l)).map(|t| t as f64 / n).collect();
                format!("{:.1}", median(&v).unwrap_or(f64::NAN))
            })
            .collect();
        parts.push(format!("median T_0..T_3 [{}] parallel time", medians.join(", ")));
        Ok((ok, parts.join("; ")))
    }

    fn round_model(&mut self) -> Result<(bool, String), Error> {
        let tol = self.tol().clone();
        let step_bound = ROUND_MODEL_STEP + tol.slack.round_model_step;
        let alpha = ROUND_MODEL_ALPHA - tol.slack.round_model_alpha;
        let mut means = Vec::new();
        for (k, &f0) in ROUND_MODEL_F0.iter().enumerate() {
            let d = round_model_oracle(f0, ROUND_MODEL_P, tol.oracle_trials, trial_seed(tol.seed, k as u64))?;
            means.push(d.mean());
        }
        let max_step = means.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
        let growth_ok = max_step <= step_bound;

        let recs = self.full(MAIN_N_LOG)?;
        let mut sim = Vec::new();
        let mut oracle = Vec::new();
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(trial_seed(tol.seed, 1000));
        for r in recs.iter() {
            let (Some(b), Some(f0), Some(snap)) = (epoch3_rounds(r), epoch2_survivor_count(r), &r.first_round) else {
                continue;
            };
            let p = snap.census.roles[Role::Coin as usize] as f64 / r.params.n as f64;
            sim.push(b as f64);
            for _ in 0..tol.oracle_draws_per_trial {
                oracle.push(chain_length(f0.max(1), p, &mut rng) as f64);
            }
        }
        let (test_ok, test_detail) = if sim.is_empty() {
            (false, "no trial reached epoch 3".to_string())
        } else {
            let t = mann_whitney(&sim, &oracle);
            let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
            (
                t.p_value >= alpha,
                format!(
                    "epoch-3 rounds: sim mean {:.2} ({} trials) vs oracle mean {:.2}, Mann-Whitney p = {:.4} (gate {alpha}, 1% level {})",
                    mean(&sim),
                    sim.len(),
                    mean(&oracle),
                    t.p_value,
                    if t.p_value >= 0.01 { "not rejected" } else { "rejected" }
                ),
            )
        };
        let means_s: Vec<String> = means.iter().map(|m| format!("{m:.2}")).collect();
        Ok((
            growth_ok && test_ok,
            format!(
                "oracle mean B for F0 {:?}: [{}], max step {max_step:.2} (bound {step_bound}); {test_detail}",
                ROUND_MODEL_F0,
                means_s.join(", ")
            ),
        ))
    }

    fn determinism(&mut self) -> Result<(bool, String), Error> {
        let seed = self.tol().seed;
        let params = self.params(10);
        let cond = StopCondition::SingleAlive.with_budget(self.budget(params.n));
        let replay = || -> Result<(String, SimState), Error> {
            let mut s = SimState::new(params, seed)?;
            let rec = s.run_until(&cond, &mut NoTrace)?;
            Ok((serde_json::to_string(&rec)?, s))
        };
        let (a, sa) = replay()?;
        let (b, sb) = replay()?;
        let replay_ok = a == b && sa == sb;

        let mut s = SimState::new(ProtocolParams::new(4), seed)?;
        let mut counts = [0u64; 16];
        for _ in 0..self.tol().uniformity_steps {
            let (r, i) = s.draw_pair();
            counts[r * 4 + i] += 1;
        }
        let diagonal_empty = (0..4).all(|k| counts[k * 5] == 0);
        let cells: Vec<u64> = (0..16).filter(|k| k % 5 != 0).map(|k| counts[k]).collect();
        let chi = chi_square_uniform(&cells);
        Ok((
            replay_ok && diagonal_empty && chi.p_value > UNIFORMITY_P,
            format!(
                "replay {} ({} bytes); pair chi-square {:.2} on 11 dof, p = {:.4}",
                if replay_ok { "identical" } else { "DIFFERS" },
                a.len(),
                chi.statistic,
                chi.p_value
            ),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection_parsing() {
        assert_eq!(parse_selection("1,3,5-7").unwrap(), vec![1, 3, 5, 6, 7]);
        assert_eq!(parse_selection("all").unwrap().len(), 11);
        assert!(parse_selection("").is_err());
        assert!(parse_selection("12").is_err());
        assert!(parse_selection("x").is_err());
    }

    #[test]
    fn quick_criteria_pass() {
        let mut suite = Suite::new(SuiteConfig::new(vec![11], 1)).unwrap();
        let r = suite.run().unwrap();
        assert!(r[0].passed, "{}", r[0]);
    }
}
