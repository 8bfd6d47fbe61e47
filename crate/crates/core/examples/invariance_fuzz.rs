//! Seeded invariance fuzzing over every family of a dimension.

use slocc::fuzz::{run_fuzz, FuzzConfig};
use slocc::linalg::DEFAULT_TOL;

fn main() -> slocc::Result<()> {
    let cfg = FuzzConfig { dim: 3, trials: 60, seed: 2024, tol: DEFAULT_TOL };
    let report = run_fuzz(&cfg)?;
    println!("{} trials over {} families, {} failures", report.trials, report.families, report.failures.len());
    for f in &report.failures {
        println!("trial {} [{}]: {}", f.trial, f.case.family, f.reason);
    }
    Ok(())
}
