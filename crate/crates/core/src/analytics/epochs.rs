use crate::sim::{EpochBoundaries, TrialRecord};

/// Epoch boundaries of a finished trial. Epoch 1 is read off the round
/// timeline; epochs 2 and 3 need the per-leader counters the engine tracked.
/// A trial whose leaders never all reached `cnt = 0` (stabilised by drag or
/// backup before that) leaves epochs 2 and 3 undefined.
pub fn epoch_boundaries(record: &TrialRecord) -> EpochBoundaries {
    if record.params.backup_only {
        return EpochBoundaries::default();
    }
    let epoch2_end = record.epochs.epoch2_end;
    EpochBoundaries {
        epoch1_end: record.timeline.first().map(|r| r.start),
        epoch2_end,
        epoch3_end: epoch2_end.zip(record.single_alive_at).map(|(e2, s)| e2.max(s)),
    }
}

/// Active candidates left when epoch 2 ended. A trial that stabilised
/// before its last candidate counted down had exactly one left.
pub fn epoch2_survivor_count(record: &TrialRecord) -> Option<u32> {
    record
        .epoch2_survivors
        .or_else(|| record.single_alive_at.map(|_| 1))
}

/// Rounds, counted by the global timeline, from the first round boundary to
/// the end of epoch 2.
pub fn epoch2_rounds(record: &TrialRecord) -> Option<u32> {
    let b = epoch_boundaries(record);
    Some(record.round_at(b.epoch2_end?) - record.round_at(b.epoch1_end?))
}

/// Elimination rounds in epoch 3: 0 when a single active candidate entered
/// it, otherwise the number of rounds up to and including the one in which
/// the active count reached 1.
pub fn epoch3_rounds(record: &TrialRecord) -> Option<u32> {
    let survivors = epoch2_survivor_count(record)?;
    if survivors <= 1 {
        return Some(0);
    }
    let end = record.epochs.epoch2_end?;
    let single = record.single_active_at?;
    Some(record.round_at(single).saturating_sub(record.round_at(end)) + 1)
}
