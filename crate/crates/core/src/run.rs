//! Stopping rules and the run record shared by every optimizer.

use alloc::vec::Vec;

use crate::Error;

/// Improvements at or below this size do not reset the stagnation counter.
pub const STAGNATION_EPSILON: f64 = 1e-12;

/// When to stop a run. At least one rule must be set; the first to fire wins.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields, default))]
pub struct StopCriterion {
    /// Evaluation budget. Checked between batches, so a run may overshoot by
    /// less than one batch.
    pub max_evaluations: Option<u64>,
    /// Stop as soon as the best objective is strictly below this value.
    pub target_objective: Option<f64>,
    /// Stop after this many consecutive iterations without an improvement
    /// larger than [`STAGNATION_EPSILON`].
    pub stagnation_window: Option<usize>,
}

impl StopCriterion {
    pub fn budget(max_evaluations: u64) -> Self {
        Self {
            max_evaluations: Some(max_evaluations),
            ..Self::default()
        }
    }

    pub fn with_target(mut self, target: f64) -> Self {
        self.target_objective = Some(target);
        self
    }

    pub fn with_stagnation_window(mut self, window: usize) -> Self {
        self.stagnation_window = Some(window);
        self
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.max_evaluations.is_none()
            && self.target_objective.is_none()
            && self.stagnation_window.is_none()
        {
            return Err(Error::config("stop criterion needs at least one rule"));
        }
        if self.stagnation_window == Some(0) {
            return Err(Error::config("stagnation_window must be at least 1"));
        }
        if matches!(self.target_objective, Some(t) if t.is_nan()) {
            return Err(Error::config("target_objective is NaN"));
        }
        Ok(())
    }

    pub fn target_reached(&self, best: f64) -> bool {
        matches!(self.target_objective, Some(t) if best < t)
    }

    pub fn budget_exhausted(&self, evaluations: u64) -> bool {
        matches!(self.max_evaluations, Some(m) if evaluations >= m)
    }
}

/// Which rule ended a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Termination {
    Target,
    Budget,
    Stagnation,
}

impl Termination {
    pub fn as_str(&self) -> &'static str {
        match self {
            Termination::Target => "target",
            Termination::Budget => "budget",
            Termination::Stagnation => "stagnation",
        }
    }
}

/// Best-so-far state at the end of one iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HistoryPoint {
    pub iteration: usize,
    pub best_objective: f64,
    /// Cumulative evaluations when this point was recorded.
    pub evaluations: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub best_position: Vec<f64>,
    pub best_objective: f64,
    pub best_feasible: bool,
    /// One entry per iteration, starting with iteration 0 (initialization).
    /// Nonincreasing in `best_objective`.
    pub history: Vec<HistoryPoint>,
    pub evaluations: u64,
    pub seed: u64,
    pub terminated_by: Termination,
}

impl RunResult {
    /// Evaluations spent when the best-so-far first dropped strictly below
    /// `target`, if it ever did.
    pub fn evaluations_to_target(&self, target: f64) -> Option<u64> {
        self.history
            .iter()
            .find(|p| p.best_objective < target)
            .map(|p| p.evaluations)
    }
}

/// Records history and applies the stop rules.
pub(crate) struct Tracker<'a> {
    stop: &'a StopCriterion,
    history: Vec<HistoryPoint>,
    reference: f64,
    stale: usize,
}

impl<'a> Tracker<'a> {
    pub(crate) fn new(stop: &'a StopCriterion) -> Self {
        Self {
            stop,
            history: Vec::new(),
            reference: f64::INFINITY,
            stale: 0,
        }
    }

    /// Appends an iteration and returns the rule that fires, if any.
    pub(crate) fn record(&mut self, best: f64, evaluations: u64) -> Option<Termination> {
        let iteration = self.history.len();
        debug_assert!(self.history.last().is_none_or(|p| best <= p.best_objective));
        self.history.push(HistoryPoint {
            iteration,
            best_objective: best,
            evaluations,
        });
        if iteration == 0 || self.reference - best > STAGNATION_EPSILON {
            self.reference = best;
            self.stale = 0;
        } else {
            self.stale += 1;
        }

        if self.stop.target_reached(best) {
            Some(Termination::Target)
        } else if self.stop.budget_exhausted(evaluations) {
            Some(Termination::Budget)
        } else if matches!(self.stop.stagnation_window, Some(w) if self.stale >= w) {
            Some(Termination::Stagnation)
        } else {
            None
        }
    }

    pub(crate) fn budget_exhausted(&self, evaluations: u64) -> bool {
        self.stop.budget_exhausted(evaluations)
    }

    pub(crate) fn into_history(self) -> Vec<HistoryPoint> {
        self.history
    }
}
