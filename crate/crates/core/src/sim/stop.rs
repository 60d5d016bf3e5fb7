use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopCondition {
    /// Exactly one alive (A or P) leader and no pair of uninitialised agents left.
    SingleAlive,
    /// Exactly one active leader.
    SingleActive,
    /// One alive leader and it is active: every passive candidate has withdrawn.
    AllPassiveResolved,
    /// The cluster of passes through 0 that ends the first round has closed.
    FirstRound,
    /// Every active leader has counted down to the final epoch.
    Epoch2End,
    /// Some active leader has reached this drag value.
    DragLevel(u8),
    MaxInteractions(u64),
    /// Stop as soon as any member holds.
    Composite(Vec<StopCondition>),
    /// Stop once every member holds.
    All(Vec<StopCondition>),
}

/// What the engine exposes to stop conditions.
pub(crate) trait StopProbe {
    fn single_alive(&self) -> bool;
    fn single_active(&self) -> bool;
    fn resolved(&self) -> bool;
    fn first_round_done(&self) -> bool;
    fn epoch2_done(&self) -> bool;
    fn drag_reached(&self, level: u8) -> bool;
    fn interactions(&self) -> u64;
}

impl StopCondition {
    pub fn validate(&self) -> Result<(), Error> {
        match self {
            StopCondition::MaxInteractions(0) => Err(Error::Config("max-interactions limit must be positive".into())),
            StopCondition::Composite(v) | StopCondition::All(v) if v.is_empty() => {
                Err(Error::Config("empty composite stop condition".into()))
            }
            StopCondition::Composite(v) | StopCondition::All(v) => v.iter().try_for_each(StopCondition::validate),
            _ => Ok(()),
        }
    }

    /// Add an interaction budget on top of this condition.
    pub fn with_budget(self, limit: u64) -> Self {
        match self {
            StopCondition::Composite(mut v) => {
                v.push(StopCondition::MaxInteractions(limit));
                StopCondition::Composite(v)
            }
            other => StopCondition::Composite(vec![other, StopCondition::MaxInteractions(limit)]),
        }
    }

    /// Whether the condition holds. With `budgets` false every interaction
    /// limit counts as unmet, which separates reaching the goal from running
    /// out of budget.
    pub(crate) fn holds<P: StopProbe>(&self, p: &P, budgets: bool) -> bool {
        match self {
            StopCondition::SingleAlive => p.single_alive(),
            StopCondition::SingleActive => p.single_active(),
            StopCondition::AllPassiveResolved => p.resolved(),
            StopCondition::FirstRound => p.first_round_done(),
            StopCondition::Epoch2End => p.epoch2_done(),
            StopCondition::DragLevel(l) => p.drag_reached(*l),
            StopCondition::MaxInteractions(m) => budgets && p.interactions() >= *m,
            StopCondition::Composite(v) => v.iter().any(|c| c.holds(p, budgets)),
            StopCondition::All(v) => v.iter().all(|c| c.holds(p, budgets)),
        }
    }

    /// Every interaction limit mentioned anywhere in the condition.
    pub(crate) fn limits(&self, out: &mut Vec<u64>) {
        match self {
            StopCondition::MaxInteractions(m) => out.push(*m),
            StopCondition::Composite(v) | StopCondition::All(v) => v.iter().for_each(|c| c.limits(out)),
            _ => {}
        }
    }
}

impl fmt::Display for StopCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, v: &[StopCondition], sep: &str| {
            let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
            f.write_str(&parts.join(sep))
        };
        match self {
            StopCondition::SingleAlive => f.write_str("single-alive"),
            StopCondition::SingleActive => f.write_str("single-active"),
            StopCondition::AllPassiveResolved => f.write_str("resolved"),
            StopCondition::FirstRound => f.write_str("first-round"),
            StopCondition::Epoch2End => f.write_str("epoch2-end"),
            StopCondition::DragLevel(l) => write!(f, "drag:{l}"),
            StopCondition::MaxInteractions(m) => write!(f, "max:{m}"),
            StopCondition::Composite(v) => join(f, v, ","),
            StopCondition::All(v) => join(f, v, "+"),
        }
    }
}

fn parse_atom(p: &str) -> Result<StopCondition, Error> {
    let bad = |what: &str| Error::Config(format!("bad {what} in stop condition '{p}'"));
    Ok(match p {
        "single-alive" => StopCondition::SingleAlive,
        "single-active" => StopCondition::SingleActive,
        "resolved" => StopCondition::AllPassiveResolved,
        "first-round" => StopCondition::FirstRound,
        "epoch2-end" => StopCondition::Epoch2End,
        _ => {
            if let Some(m) = p.strip_prefix("max:") {
                StopCondition::MaxInteractions(m.parse().map_err(|_| bad("interaction limit"))?)
            } else if let Some(l) = p.strip_prefix("drag:") {
                StopCondition::DragLevel(l.parse().map_err(|_| bad("drag level"))?)
            } else {
                return Err(Error::Config(format!("unknown stop condition '{p}'")));
            }
        }
    })
}

impl FromStr for StopCondition {
    type Err = Error;

    /// Atoms are `single-alive`, `single-active`, `resolved`, `first-round`,
    /// `epoch2-end`, `drag:<L>` and `max:<N>`. `a+b` requires both, and a
    /// comma-separated list stops on the first member that holds.
    fn from_str(s: &str) -> Result<Self, Error> {
        let any: Vec<&str> = s.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
        let mut alternatives = Vec::with_capacity(any.len());
        for alt in &any {
            let parts: Vec<&str> = alt.split('+').map(str::trim).collect();
            let mut atoms = parts.iter().map(|p| parse_atom(p)).collect::<Result<Vec<_>, _>>()?;
            alternatives.push(if atoms.len() == 1 {
                atoms.remove(0)
            } else {
                StopCondition::All(atoms)
            });
        }
        let cond = match alternatives.len() {
            0 => return Err(Error::Config("empty stop condition".into())),
            1 => alternatives.remove(0),
            _ => StopCondition::Composite(alternatives),
        };
        cond.validate()?;
        Ok(cond)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let c: StopCondition = "single-alive,max:100".parse().unwrap();
        assert_eq!(
            c,
            StopCondition::Composite(vec![StopCondition::SingleAlive, StopCondition::MaxInteractions(100)])
        );
        assert_eq!(c.to_string(), "single-alive,max:100");
        let both: StopCondition = "single-alive+drag:3,max:9".parse().unwrap();
        assert_eq!(
            both,
            StopCondition::Composite(vec![
                StopCondition::All(vec![StopCondition::SingleAlive, StopCondition::DragLevel(3)]),
                StopCondition::MaxInteractions(9)
            ])
        );
        assert_eq!(both.to_string(), "single-alive+drag:3,max:9");
        assert!("max:0".parse::<StopCondition>().is_err());
        assert!("forever".parse::<StopCondition>().is_err());
        assert!("".parse::<StopCondition>().is_err());
        assert!("drag:x".parse::<StopCondition>().is_err());
    }

    #[test]
    fn budgets_collect() {
        let c = StopCondition::MaxInteractions(50).with_budget(10);
        let mut v = Vec::new();
        c.limits(&mut v);
        assert_eq!(v, vec![50, 10]);
    }
}
