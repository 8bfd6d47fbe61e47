//! Invariance fuzzing: push family representatives through random exact
//! operators and check that nothing observable moves.

use rayon::prelude::*;

use crate::canonical::{canonicalize, Exactness};
use crate::classify::descriptor_of;
use crate::enumerate::{enumerate_classes, sample_values};
use crate::error::Result;
use crate::state::{apply_ilo, random_ilo, IloTriple, MatrixPair};

#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
}

/// A state and the operator applied to it; enough to replay a trial.
#[derive(Clone, Debug)]
pub struct FuzzCase {
    pub family: String,
    pub state: MatrixPair,
    pub op: IloTriple,
}

#[derive(Clone, Debug)]
pub struct FuzzFailure {
    pub trial: usize,
    pub case: FuzzCase,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct FuzzReport {
    pub trials: usize,
    pub families: usize,
    pub failures: Vec<FuzzFailure>,
}

/// Seed of the operator used in `trial`.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(trial as u64)
}

/// `Err(reason)` if the descriptor changes under `op`, or if the
/// canonical form of the image comes with a witness that fails to verify.
pub fn check_case(state: &MatrixPair, op: &IloTriple, tol: f64) -> std::result::Result<(), String> {
    let before = descriptor_of(state, tol).map_err(|e| format!("descriptor of the state: {e}"))?;
    let image = apply_ilo(state, op);
    let after = descriptor_of(&image, tol).map_err(|e| format!("descriptor of the image: {e}"))?;
    if before != after {
        return Err(format!("descriptor changed: {} -> {}", before.config_key, after.config_key));
    }
    let canonical = canonicalize(&image, tol).map_err(|e| format!("canonicalize: {e}"))?;
    if let Exactness::Exact = canonical.witness.exactness {
        if let Exactness::Approximate { residual } = canonical.witness.verify(&image, &canonical.pair) {
            return Err(format!("exact witness misses by {residual:e}"));
        }
    }
    Ok(())
}

/// Runs `trials` cases round-robin over the families of `dim`. Results do
/// not depend on thread scheduling.
pub fn run_fuzz(cfg: &FuzzConfig) -> Result<FuzzReport> {
    let families = enumerate_classes(cfg.dim, cfg.tol)?;
    let mut failures: Vec<FuzzFailure> = (0..cfg.trials)
        .into_par_iter()
        .filter_map(|trial| {
            let fam = &families[trial % families.len()];
            let round = trial / families.len();
            let offset = round % (16 - fam.representative.params).max(1);
            let state = fam.sample(&sample_values(fam.representative.params, offset));
            let op = random_ilo(cfg.dim, trial_seed(cfg.seed, trial));
            check_case(&state, &op, cfg.tol)
                .err()
                .map(|reason| FuzzFailure { trial, case: FuzzCase { family: fam.to_string(), state, op }, reason })
        })
        .collect();
    failures.sort_by_key(|f| f.trial);
    Ok(FuzzReport { trials: cfg.trials, families: families.len(), failures })
}
