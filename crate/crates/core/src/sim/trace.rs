//! Trace events and sinks.

use std::io::Write;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EventKind {
    /// One agent passed through 0. `value` is its new phase.
    RoundBoundary,
    /// `value` is the epoch that just ended (1 or 2). `agent` is unused.
    EpochTransition,
    /// An alive leader withdrew. `value` is the alive count afterwards.
    Elimination,
    /// An active leader advanced its drag. `value` is the new drag.
    DragAdvance,
    /// The alive count reached zero. Must never happen.
    SafetyViolation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub kind: EventKind,
    pub interaction: u64,
    pub agent: u32,
    pub value: u32,
}

/// Receives trace events from the stepping loop, in non-decreasing
/// interaction order.
pub trait Observer {
    fn on_event(&mut self, event: &TraceEvent);

    /// Per-agent round boundaries are by far the most frequent events; sinks
    /// that do not want them skip their construction entirely.
    fn wants_round_boundaries(&self) -> bool {
        true
    }
}

/// Discards everything.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoTrace;

impl Observer for NoTrace {
    #[inline]
    fn on_event(&mut self, _event: &TraceEvent) {}

    #[inline]
    fn wants_round_boundaries(&self) -> bool {
        false
    }
}

/// Keeps every event in memory.
#[derive(Debug, Default, Clone)]
pub struct EventLog {
    pub events: Vec<TraceEvent>,
    pub skip_round_boundaries: bool,
}

impl Observer for EventLog {
    fn on_event(&mut self, event: &TraceEvent) {
        self.events.push(*event);
    }

    fn wants_round_boundaries(&self) -> bool {
        !self.skip_round_boundaries
    }
}

/// Newline-delimited JSON, one event per line.
pub struct JsonLinesTrace<W: Write> {
    out: W,
    round_boundaries: bool,
    error: Option<std::io::Error>,
}

impl<W: Write> JsonLinesTrace<W> {
    pub fn new(out: W, round_boundaries: bool) -> Self {
        Self {
            out,
            round_boundaries,
            error: None,
        }
    }

    /// Flush and surface the first write error, if any.
    pub fn finish(mut self) -> std::io::Result<W> {
        if let Some(e) = self.error.take() {
            return Err(e);
        }
        self.out.flush()?;
        Ok(self.out)
    }
}

impl<W: Write> Observer for JsonLinesTrace<W> {
    fn on_event(&mut self, event: &TraceEvent) {
        if self.error.is_some() {
            return;
        }
        let res = serde_json::to_writer(&mut self.out, event)
            .map_err(std::io::Error::from)
            .and_then(|_| self.out.write_all(b"\n"));
        if let Err(e) = res {
            self.error = Some(e);
        }
    }

    fn wants_round_boundaries(&self) -> bool {
        self.round_boundaries
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_lines_format() {
        let mut t = JsonLinesTrace::new(Vec::new(), true);
        t.on_event(&TraceEvent {
            kind: EventKind::DragAdvance,
            interaction: 42,
            agent: 3,
            value: 1,
        });
        let out = String::from_utf8(t.finish().unwrap()).unwrap();
        assert_eq!(out, "{\"kind\":\"drag-advance\",\"interaction\":42,\"agent\":3,\"value\":1}\n");
    }
}
