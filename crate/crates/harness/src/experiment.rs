//! Experiment file parsing and validation.

use std::path::{Path, PathBuf};

use cuckoo_core::{
    corpus, AlgorithmParams, HillClimbParams, PenaltyConfig, Problem, StopCriterion,
};
use serde::{Deserialize, Serialize};

use crate::HarnessError;

pub const ALGORITHM_NAMES: [&str; 2] = ["cuckoo_search", "hill_climb"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    /// Independent runs per (problem, algorithm) cell.
    pub trials: usize,
    /// Trial `i` uses seed `base_seed + i`.
    #[serde(default)]
    pub base_seed: u64,
    /// Shared by every algorithm; overrides any `stop` in a parameter block.
    pub stop: StopCriterion,
    pub problems: Vec<ProblemEntry>,
    pub algorithms: Vec<AlgorithmEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemEntry {
    /// Corpus name, see `cuckoo list-problems`.
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub penalty: Option<PenaltyConfig>,
}

impl ProblemEntry {
    pub fn label(&self) -> String {
        if let Some(l) = &self.label {
            return l.clone();
        }
        match (self.dimension, corpus::fixed_dimension(&self.name)) {
            (Some(d), None) => format!("{}_d{d}", self.name),
            _ => self.name.clone(),
        }
    }

    pub fn build(&self) -> Result<Problem, HarnessError> {
        let p = corpus::lookup(&self.name, self.dimension)?;
        Ok(match self.penalty {
            Some(pen) => p.with_penalty(pen)?,
            None => p,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum AlgorithmEntry {
    CuckooSearch {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
        #[serde(default)]
        params: AlgorithmParams,
    },
    HillClimb {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
        #[serde(default)]
        params: HillClimbParams,
    },
}

impl AlgorithmEntry {
    pub fn kind(&self) -> &'static str {
        match self {
            AlgorithmEntry::CuckooSearch { .. } => "cuckoo_search",
            AlgorithmEntry::HillClimb { .. } => "hill_climb",
        }
    }

    pub fn label(&self) -> String {
        match self {
            AlgorithmEntry::CuckooSearch { label, .. }
            | AlgorithmEntry::HillClimb { label, .. } => {
                label.clone().unwrap_or_else(|| self.kind().to_string())
            }
        }
    }

    /// Copy of this entry with `stop` installed in its parameters.
    pub fn with_stop(&self, stop: StopCriterion) -> Self {
        let mut out = self.clone();
        match &mut out {
            AlgorithmEntry::CuckooSearch { params, .. } => params.stop = stop,
            AlgorithmEntry::HillClimb { params, .. } => params.stop = stop,
        }
        out
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        match self {
            AlgorithmEntry::CuckooSearch { params, .. } => params.validate()?,
            AlgorithmEntry::HillClimb { params, .. } => params.validate()?,
        }
        Ok(())
    }

    pub fn run(
        &self,
        problem: &Problem,
        seed: u64,
    ) -> Result<cuckoo_core::RunResult, cuckoo_core::Error> {
        match self {
            AlgorithmEntry::CuckooSearch { params, .. } => {
                cuckoo_core::cuckoo_search(problem, params, seed)
            }
            AlgorithmEntry::HillClimb { params, .. } => {
                cuckoo_core::hill_climb_restart(problem, params, seed)
            }
        }
    }
}

/// One (problem, algorithm) pair, ready to run.
#[derive(Debug, Clone)]
pub struct Cell {
    pub index: usize,
    pub problem_label: String,
    pub problem_entry: ProblemEntry,
    pub problem: Problem,
    pub algorithm_label: String,
    pub algorithm: AlgorithmEntry,
}

fn check_label(kind: &str, label: &str) -> Result<(), HarnessError> {
    let ok = !label.is_empty()
        && !label.contains("__")
        && label
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'));
    if ok {
        Ok(())
    } else {
        Err(HarnessError::Config(format!(
            "{kind} label `{label}` must be non-empty ASCII alphanumerics, `_`, `-` or `.` without `__`"
        )))
    }
}

impl ExperimentSpec {
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        toml::from_str(&text).map_err(|e| HarnessError::parse(path, e))
    }

    pub fn seed(&self, trial: usize) -> u64 {
        self.base_seed.wrapping_add(trial as u64)
    }

    /// Validates the whole spec and expands it into cells, problems outer.
    pub fn cells(&self) -> Result<Vec<Cell>, HarnessError> {
        if self.trials == 0 {
            return Err(HarnessError::Config("trials must be at least 1".into()));
        }
        if self.problems.is_empty() || self.algorithms.is_empty() {
            return Err(HarnessError::Config(
                "need at least one problem and one algorithm".into(),
            ));
        }
        if self.workers == Some(0) {
            return Err(HarnessError::Config("workers must be at least 1".into()));
        }
        self.stop.validate()?;

        let mut problems = Vec::new();
        for entry in &self.problems {
            let label = entry.label();
            check_label("problem", &label)?;
            if problems
                .iter()
                .any(|(l, _, _): &(String, _, _)| *l == label)
            {
                return Err(HarnessError::Config(format!(
                    "duplicate problem label `{label}`"
                )));
            }
            problems.push((label, entry.clone(), entry.build()?));
        }
        let mut algorithms = Vec::new();
        for entry in &self.algorithms {
            let label = entry.label();
            check_label("algorithm", &label)?;
            if algorithms.iter().any(|(l, _): &(String, _)| *l == label) {
                return Err(HarnessError::Config(format!(
                    "duplicate algorithm label `{label}`"
                )));
            }
            let entry = entry.with_stop(self.stop);
            entry.validate()?;
            algorithms.push((label, entry));
        }

        let mut cells = Vec::new();
        for (pl, pe, p) in &problems {
            for (al, a) in &algorithms {
                cells.push(Cell {
                    index: cells.len(),
                    problem_label: pl.clone(),
                    problem_entry: pe.clone(),
                    problem: p.clone(),
                    algorithm_label: al.clone(),
                    algorithm: a.clone(),
                });
            }
        }
        Ok(cells)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
trials = 3
base_seed = 7

[stop]
max_evaluations = 500

[[problems]]
name = "sphere"
dimension = 4

[[problems]]
name = "spring_design"

[[algorithms]]
name = "cuckoo_search"
[algorithms.params]
nests = 10
alpha = { absolute = 0.05 }

[[algorithms]]
name = "hill_climb"
label = "hc"
"#;

    #[test]
    fn parses_and_expands() {
        let spec = ExperimentSpec::from_toml(MINIMAL).unwrap();
        let cells = spec.cells().unwrap();
        assert_eq!(cells.len(), 4);
        assert_eq!(cells[0].problem_label, "sphere_d4");
        assert_eq!(cells[1].algorithm_label, "hc");
        assert_eq!(cells[2].problem_label, "spring_design");
        assert_eq!(spec.seed(2), 9);
        match &cells[0].algorithm {
            AlgorithmEntry::CuckooSearch { params, .. } => {
                assert_eq!(params.nests, 10);
                assert_eq!(params.alpha, cuckoo_core::StepScale::Absolute(0.05));
                assert_eq!(params.stop, StopCriterion::budget(500));
                assert_eq!(params.discovery_probability, 0.25);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unresolved_names_are_config_errors() {
        let bad_problem = MINIMAL.replace("\"spring_design\"", "\"griewank\"");
        let spec = ExperimentSpec::from_toml(&bad_problem).unwrap();
        assert!(matches!(
            spec.cells(),
            Err(HarnessError::Core(cuckoo_core::Error::UnknownProblem(_)))
        ));

        let bad_algo = MINIMAL.replace("\"hill_climb\"", "\"pso\"");
        assert!(matches!(
            ExperimentSpec::from_toml(&bad_algo),
            Err(HarnessError::Config(_))
        ));
    }

    #[test]
    fn rejects_bad_counts_and_labels() {
        let spec = ExperimentSpec::from_toml(&MINIMAL.replace("trials = 3", "trials = 0")).unwrap();
        assert!(spec.cells().is_err());
        let dup = MINIMAL.replace("label = \"hc\"", "label = \"cuckoo_search\"");
        assert!(ExperimentSpec::from_toml(&dup).unwrap().cells().is_err());
        let slash = MINIMAL.replace("label = \"hc\"", "label = \"a/b\"");
        assert!(ExperimentSpec::from_toml(&slash).unwrap().cells().is_err());
        let no_stop = MINIMAL.replace("max_evaluations = 500", "");
        assert!(ExperimentSpec::from_toml(&no_stop)
            .unwrap()
            .cells()
            .is_err());
    }
}
