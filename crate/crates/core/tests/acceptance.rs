//! Acceptance suite. Runs every criterion at full scale and prints one
//! pass/fail line per criterion. Exits non-zero if any criterion fails.
//!
//! `PPLE_CRITERIA` narrows the selection (e.g. `2,11`); `PPLE_WORKERS` sets
//! the worker count.

use std::process::ExitCode;
use std::time::Instant;

use pple::sim::default_workers;
use pple::validate::{parse_selection, Suite, SuiteConfig};

fn main() -> ExitCode {
    // libtest flags such as --nocapture or a name filter are passed through
    // by `cargo test`; this target has a single suite and ignores them.
    let selection = std::env::var("PPLE_CRITERIA").unwrap_or_else(|_| "all".into());
    let criteria = match parse_selection(&selection) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("acceptance: {e}");
            return ExitCode::from(2);
        }
    };
    let mut cfg = SuiteConfig::new(criteria.clone(), default_workers());
    cfg.progress = true;
    println!(
        "acceptance suite: criteria {criteria:?}, tolerances v{}, seed {}, {} worker(s)",
        cfg.tolerances.version, cfg.tolerances.seed, cfg.workers
    );
    let mut suite = Suite::new(cfg).expect("valid suite configuration");
    let start = Instant::now();
    let mut failed = Vec::new();
    for id in criteria {
        let t0 = Instant::now();
        match suite.run_one(id) {
            Ok(report) => {
                println!("{report}  [{:.0}s]", t0.elapsed().as_secs_f64());
                if !report.passed {
                    failed.push(id);
                }
            }
            Err(e) => {
                println!("criterion {id:>2} ERROR {e}");
                failed.push(id);
            }
        }
    }
    println!(
        "acceptance: {} failed {failed:?} in {:.0}s",
        failed.len(),
        start.elapsed().as_secs_f64()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
