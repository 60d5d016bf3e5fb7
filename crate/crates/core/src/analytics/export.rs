//! CSV exports for histograms and round timelines.

use std::io::Write;

use serde::Serialize;

use super::histogram::LevelHistogram;
use crate::sim::RoundTimeline;
use crate::Error;

#[derive(Serialize)]
struct LevelRow {
    level: usize,
    exact: u32,
    cumulative: u32,
}

pub fn write_histogram_csv<W: Write>(out: W, h: &LevelHistogram) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    for (level, (&exact, &cumulative)) in h.exact.iter().zip(&h.cumulative).enumerate() {
        w.serialize(LevelRow {
            level,
            exact,
            cumulative,
        })?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_timeline_csv<W: Write>(out: W, timeline: &RoundTimeline) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    for r in timeline {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_rows() {
        let h = LevelHistogram::from_exact(vec![5, 2, 1], 8);
        let mut buf = Vec::new();
        write_histogram_csv(&mut buf, &h).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "level,exact,cumulative\n0,5,8\n1,2,3\n2,1,1\n"
        );
    }
}
