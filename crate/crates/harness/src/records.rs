//! Per-run record files.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use cuckoo_core::{HistoryPoint, RunResult, Termination};
use serde::{Deserialize, Serialize};

use crate::{AlgorithmEntry, HarnessError, ProblemEntry};

pub const RUNS_DIR: &str = "runs";
pub const TIMINGS_FILE: &str = "timings.csv";
pub const HISTORY_HEADER: [&str; 3] = ["iteration", "best_objective", "evaluations"];

/// Sidecar metadata written next to each history file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub cell: usize,
    pub problem: String,
    pub algorithm: String,
    pub trial: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_objective: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terminated_by: Option<Termination>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evaluations: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub best_objective: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub best_feasible: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default)]
    pub best_position: Vec<f64>,
    pub problem_config: ProblemEntry,
    pub algorithm_config: AlgorithmEntry,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub meta: RunMeta,
    pub history: Vec<HistoryPoint>,
    pub wall_time_seconds: f64,
}

impl RunRecord {
    pub fn from_result(
        meta: RunMeta,
        result: Result<RunResult, cuckoo_core::Error>,
        wall_time_seconds: f64,
    ) -> Self {
        let mut meta = meta;
        let history = match result {
            Ok(r) => {
                meta.terminated_by = Some(r.terminated_by);
                meta.evaluations = Some(r.evaluations);
                meta.best_objective = Some(r.best_objective);
                meta.best_feasible = Some(r.best_feasible);
                meta.best_position = r.best_position;
                r.history
            }
            Err(e) => {
                meta.error = Some(e.to_string());
                Vec::new()
            }
        };
        Self {
            meta,
            history,
            wall_time_seconds,
        }
    }

    pub fn failed(&self) -> bool {
        self.meta.error.is_some()
    }

    /// Final best objective; `+∞` for a run that failed.
    pub fn final_objective(&self) -> f64 {
        self.history
            .last()
            .map_or(f64::INFINITY, |p| p.best_objective)
    }

    pub fn evaluations_to_target(&self) -> Option<u64> {
        let target = self.meta.target_objective?;
        self.history
            .iter()
            .find(|p| p.best_objective < target)
            .map(|p| p.evaluations)
    }

    fn stem(&self) -> PathBuf {
        PathBuf::from(RUNS_DIR)
            .join(format!("{}__{}", self.meta.problem, self.meta.algorithm))
            .join(format!("trial_{:04}", self.meta.trial))
    }

    pub fn history_path(&self, root: &Path) -> PathBuf {
        root.join(self.stem()).with_extension("csv")
    }

    pub fn meta_path(&self, root: &Path) -> PathBuf {
        root.join(self.stem()).with_extension("toml")
    }

    /// Writes the history table and the sidecar under `root`.
    pub fn write(&self, root: &Path) -> Result<(), HarnessError> {
        let hp = self.history_path(root);
        if let Some(dir) = hp.parent() {
            fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
        }
        fs::write(&hp, history_to_csv(&self.history)?).map_err(|e| HarnessError::io(&hp, e))?;
        let mp = self.meta_path(root);
        let text = toml::to_string(&self.meta).map_err(|e| HarnessError::parse(&mp, e))?;
        fs::write(&mp, text).map_err(|e| HarnessError::io(&mp, e))
    }
}

pub fn history_to_csv(history: &[HistoryPoint]) -> Result<Vec<u8>, HarnessError> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    let err = |e: csv::Error| HarnessError::parse("<history>", e);
    w.write_record(HISTORY_HEADER).map_err(err)?;
    for p in history {
        w.serialize(p).map_err(err)?;
    }
    w.into_inner()
        .map_err(|e| HarnessError::parse("<history>", e))
}

pub fn read_history(path: &Path) -> Result<Vec<HistoryPoint>, HarnessError> {
    let mut r = csv::Reader::from_path(path).map_err(|e| HarnessError::parse(path, e))?;
    let headers = r.headers().map_err(|e| HarnessError::parse(path, e))?;
    if headers.iter().ne(HISTORY_HEADER) {
        return Err(HarnessError::parse(path, "unexpected history header"));
    }
    r.deserialize()
        .collect::<Result<_, _>>()
        .map_err(|e| HarnessError::parse(path, e))
}

#[derive(Debug, Serialize, Deserialize)]
struct TimingRow {
    problem: String,
    algorithm: String,
    trial: usize,
    wall_time_seconds: f64,
}

pub fn write_timings(root: &Path, records: &[RunRecord]) -> Result<(), HarnessError> {
    let path = root.join(TIMINGS_FILE);
    let mut w = csv::Writer::from_path(&path).map_err(|e| HarnessError::parse(&path, e))?;
    for r in records {
        w.serialize(TimingRow {
            problem: r.meta.problem.clone(),
            algorithm: r.meta.algorithm.clone(),
            trial: r.meta.trial,
            wall_time_seconds: r.wall_time_seconds,
        })
        .map_err(|e| HarnessError::parse(&path, e))?;
    }
    w.flush().map_err(|e| HarnessError::io(&path, e))
}

/// Loads every run under `root`, ordered by cell then trial. Runs missing
/// from `timings.csv` get a wall time of zero.
pub fn load_records(root: &Path) -> Result<Vec<RunRecord>, HarnessError> {
    let mut timings = HashMap::new();
    let tp = root.join(TIMINGS_FILE);
    if tp.exists() {
        let mut r = csv::Reader::from_path(&tp).map_err(|e| HarnessError::parse(&tp, e))?;
        for row in r.deserialize::<TimingRow>() {
            let row = row.map_err(|e| HarnessError::parse(&tp, e))?;
            timings.insert(
                (row.problem, row.algorithm, row.trial),
                row.wall_time_seconds,
            );
        }
    }

    let runs = root.join(RUNS_DIR);
    let mut metas = Vec::new();
    for cell in fs::read_dir(&runs).map_err(|e| HarnessError::io(&runs, e))? {
        let cell = cell.map_err(|e| HarnessError::io(&runs, e))?.path();
        if !cell.is_dir() {
            continue;
        }
        for file in fs::read_dir(&cell).map_err(|e| HarnessError::io(&cell, e))? {
            let path = file.map_err(|e| HarnessError::io(&cell, e))?.path();
            if path.extension().is_some_and(|e| e == "toml") {
                metas.push(path);
            }
        }
    }

    let mut out = Vec::with_capacity(metas.len());
    for mp in metas {
        let text = fs::read_to_string(&mp).map_err(|e| HarnessError::io(&mp, e))?;
        let meta: RunMeta = toml::from_str(&text).map_err(|e| HarnessError::parse(&mp, e))?;
        let history = read_history(&mp.with_extension("csv"))?;
        let key = (meta.problem.clone(), meta.algorithm.clone(), meta.trial);
        let wall_time_seconds = timings.get(&key).copied().unwrap_or(0.0);
        out.push(RunRecord {
            meta,
            history,
            wall_time_seconds,
        });
    }
    out.sort_by_key(|r| (r.meta.cell, r.meta.trial));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn history_csv_round_trips_exactly() {
        let h = vec![
            HistoryPoint {
                iteration: 0,
                best_objective: 0.1 + 0.2,
                evaluations: 25,
            },
            HistoryPoint {
                iteration: 1,
                best_objective: 1.234_567_890_123_456_7e-300,
                evaluations: 82,
            },
        ];
        let bytes = history_to_csv(&h).unwrap();
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(text.starts_with("iteration,best_objective,evaluations\n"));
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("h.csv");
        fs::write(&p, bytes).unwrap();
        assert_eq!(read_history(&p).unwrap(), h);
    }

    #[test]
    fn empty_history_keeps_header() {
        let bytes = history_to_csv(&[]).unwrap();
        assert_eq!(bytes, b"iteration,best_objective,evaluations\n");
    }
}
