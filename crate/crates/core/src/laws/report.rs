//! Law check reports and the seeded trial runner behind them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::rng::{rng_from_seed, trial_seed, TrialRng};

/// The first failing trial of a check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: usize,
    /// Seed of the trial's generator; rerunning the law with it reproduces
    /// the instance.
    pub seed: u64,
    pub objects: Vec<String>,
    /// `None` when the trial raised an error instead of producing a value.
    pub deviation: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawCheckReport {
    pub law: String,
    pub model: String,
    pub trials: usize,
    /// Largest deviation over all trials that produced a value; `None` if a
    /// trial errored.
    pub max_abs_deviation: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub seed: u64,
    /// Set for laws whose stated form rests on an interpretation choice.
    pub flagged: bool,
    pub witness: Option<Witness>,
}

/// Outcome of one trial: the objects it ran on and the deviation found.
pub type TrialOutcome = (Vec<String>, Result<f64>);

/// Runs `trials` independent trials in parallel. Trial `t` draws from a
/// generator seeded by `trial_seed(law@model, seed, t)`, so results do not
/// depend on scheduling.
pub fn run_trials<F>(law: &str, model: &str, trials: usize, seed: u64, tolerance: f64, flagged: bool, trial: F) -> LawCheckReport
where
    F: Fn(&mut TrialRng) -> TrialOutcome + Sync,
{
    let label = format!("{law}@{model}");
    let outcomes: Vec<(u64, TrialOutcome)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let s = trial_seed(&label, seed, t);
            (s, trial(&mut rng_from_seed(s)))
        })
        .collect();

    let mut max_dev: Option<f64> = Some(0.0);
    let mut witness = None;
    for (t, (s, (objects, result))) in outcomes.into_iter().enumerate() {
        let failed = match &result {
            Ok(d) => {
                max_dev = max_dev.map(|m| if d.is_nan() { f64::NAN } else { m.max(*d) });
                d.is_nan() || *d > tolerance
            }
            Err(_) => {
                max_dev = None;
                true
            }
        };
        if failed && witness.is_none() {
            witness = Some(Witness {
                trial: t,
                seed: s,
                objects,
                deviation: result.as_ref().ok().copied(),
                error: result.err().map(|e| e.to_string()),
            });
        }
    }
    let pass = witness.is_none();
    LawCheckReport {
        law: law.to_string(),
        model: model.to_string(),
        trials,
        max_abs_deviation: max_dev.filter(|d| d.is_finite()),
        tolerance,
        pass,
        seed,
        flagged,
        witness,
    }
}
