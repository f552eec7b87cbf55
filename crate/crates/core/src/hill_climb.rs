//! Random-restart hill climbing, the comparison baseline.
//!
//! A climb starts from a uniform point. Each move perturbs one uniformly
//! chosen coordinate by `U(−step_c, step_c)`, where `step_c` starts at
//! `step_fraction` of the coordinate's bound width, and keeps the move only
//! on strict improvement. Every rejected move multiplies the step by
//! `shrink_factor`; after `stall_limit` consecutive rejections the climb is
//! abandoned and a new one starts from a fresh uniform point.
//!
//! One evaluation is one iteration, so the history has a row per
//! evaluation and the budget is never overshot.

use rand::Rng;

use crate::run::Tracker;
use crate::{rng_from_seed, Error, Nest, Problem, RunResult, StopCriterion};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields, default))]
pub struct HillClimbParams {
    pub step_fraction: f64,
    pub shrink_factor: f64,
    pub stall_limit: usize,
    pub stop: StopCriterion,
}

impl Default for HillClimbParams {
    fn default() -> Self {
        Self {
            step_fraction: 0.1,
            shrink_factor: 0.5,
            stall_limit: 20,
            stop: StopCriterion::budget(50_000),
        }
    }
}

impl HillClimbParams {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.step_fraction > 0.0 && self.step_fraction <= 1.0) {
            return Err(Error::config("step_fraction must lie in (0, 1]"));
        }
        if !(self.shrink_factor > 0.0 && self.shrink_factor < 1.0) {
            return Err(Error::config("shrink_factor must lie in (0, 1)"));
        }
        if self.stall_limit == 0 {
            return Err(Error::config("stall_limit must be at least 1"));
        }
        self.stop.validate()
    }
}

pub fn hill_climb_restart(
    problem: &Problem,
    params: &HillClimbParams,
    seed: u64,
) -> Result<RunResult, Error> {
    params.validate()?;
    problem.require_finite_bounds()?;
    let mut rng = rng_from_seed(seed);
    let bounds = problem.bounds();
    let d = problem.dimension();
    let mut tracker = Tracker::new(&params.stop);
    let mut evaluations = 0u64;

    let mut current = Nest::evaluate(problem, problem.sample_uniform(&mut rng))?;
    evaluations += 1;
    let mut best = current.clone();
    let mut step: alloc::vec::Vec<f64> = bounds
        .iter()
        .map(|b| params.step_fraction * b.width())
        .collect();
    let mut failures = 0usize;

    let mut fired = tracker.record(best.objective, evaluations);
    while fired.is_none() {
        if failures >= params.stall_limit {
            current = Nest::evaluate(problem, problem.sample_uniform(&mut rng))?;
            for (s, b) in step.iter_mut().zip(bounds) {
                *s = params.step_fraction * b.width();
            }
            failures = 0;
        } else {
            let c = rng.gen_range(0..d);
            let delta = (2.0 * rng.gen::<f64>() - 1.0) * step[c];
            let mut position = current.position.clone();
            position[c] = bounds[c].clamp(position[c] + delta);
            let cand = Nest::evaluate(problem, position)?;
            if cand.objective < current.objective {
                current = cand;
                failures = 0;
            } else {
                step[c] *= params.shrink_factor;
                failures += 1;
            }
        }
        evaluations += 1;
        if current.objective < best.objective {
            best = current.clone();
        }
        fired = tracker.record(best.objective, evaluations);
    }

    Ok(RunResult {
        best_position: best.position,
        best_objective: best.objective,
        best_feasible: best.feasible,
        history: tracker.into_history(),
        evaluations,
        seed,
        terminated_by: fired.expect("loop exits only when a rule fires"),
    })
}
