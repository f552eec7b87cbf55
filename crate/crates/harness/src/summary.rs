//! Per-cell summary statistics.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{HarnessError, RunRecord};

pub const SUMMARY_FILE: &str = "summary.csv";

/// One line of `summary.csv`. Column order is the field order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub problem: String,
    pub algorithm: String,
    pub trials: usize,
    /// Fraction of trials whose best-so-far dropped strictly below the target.
    pub success_rate: f64,
    /// Lower median over the successful trials only.
    pub median_evals_to_target: Option<u64>,
    pub best_objective: f64,
    pub median_objective: f64,
    pub worst_objective: f64,
    /// Sum of per-run wall times.
    pub wall_time_seconds: f64,
}

/// Element at index `⌊(n − 1) / 2⌋` of the sorted values.
pub fn lower_median<T: Copy + PartialOrd>(values: &[T]) -> Option<T> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("values are comparable"));
    Some(v[(v.len() - 1) / 2])
}

/// Summarizes one cell. Failed runs count as misses with final objective `+∞`.
pub fn summarize_group(records: &[RunRecord]) -> Result<SummaryRow, HarnessError> {
    let first = records.first().ok_or(HarnessError::EmptyGroup)?;
    let trials = records.len();
    let finals: Vec<f64> = records.iter().map(RunRecord::final_objective).collect();
    let hits: Vec<u64> = records
        .iter()
        .filter_map(RunRecord::evaluations_to_target)
        .collect();
    Ok(SummaryRow {
        problem: first.meta.problem.clone(),
        algorithm: first.meta.algorithm.clone(),
        trials,
        success_rate: hits.len() as f64 / trials as f64,
        median_evals_to_target: lower_median(&hits),
        best_objective: finals.iter().copied().fold(f64::INFINITY, f64::min),
        median_objective: lower_median(&finals).expect("non-empty"),
        worst_objective: finals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        wall_time_seconds: records.iter().map(|r| r.wall_time_seconds).sum(),
    })
}

/// Groups records by cell (they must already be ordered by cell) and
/// summarizes each group.
pub fn summarize(records: &[RunRecord]) -> Result<Vec<SummaryRow>, HarnessError> {
    if records.is_empty() {
        return Err(HarnessError::EmptyGroup);
    }
    records
        .chunk_by(|a, b| a.meta.cell == b.meta.cell)
        .map(summarize_group)
        .collect()
}

pub fn summary_to_csv(rows: &[SummaryRow]) -> Result<Vec<u8>, HarnessError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)
            .map_err(|e| HarnessError::parse(SUMMARY_FILE, e))?;
    }
    w.into_inner()
        .map_err(|e| HarnessError::parse(SUMMARY_FILE, e))
}

pub fn write_summary(root: &Path, rows: &[SummaryRow]) -> Result<(), HarnessError> {
    let path = root.join(SUMMARY_FILE);
    std::fs::write(&path, summary_to_csv(rows)?).map_err(|e| HarnessError::io(&path, e))
}

pub fn read_summary(root: &Path) -> Result<Vec<SummaryRow>, HarnessError> {
    let path = root.join(SUMMARY_FILE);
    let mut r = csv::Reader::from_path(&path).map_err(|e| HarnessError::parse(&path, e))?;
    r.deserialize()
        .collect::<Result<_, _>>()
        .map_err(|e| HarnessError::parse(&path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{AlgorithmEntry, ProblemEntry, RunMeta};
    use cuckoo_core::{AlgorithmParams, HistoryPoint};

    fn record(cell: usize, trial: usize, history: &[(f64, u64)], target: Option<f64>) -> RunRecord {
        RunRecord {
            meta: RunMeta {
                cell,
                problem: "p".into(),
                algorithm: "a".into(),
                trial,
                seed: trial as u64,
                target_objective: target,
                terminated_by: None,
                evaluations: None,
                best_objective: None,
                best_feasible: None,
                error: None,
                best_position: Vec::new(),
                problem_config: ProblemEntry {
                    name: "sphere".into(),
                    dimension: None,
                    label: None,
                    penalty: None,
                },
                algorithm_config: AlgorithmEntry::CuckooSearch {
                    label: None,
                    params: AlgorithmParams::default(),
                },
            },
            history: history
                .iter()
                .enumerate()
                .map(|(i, &(b, e))| HistoryPoint {
                    iteration: i,
                    best_objective: b,
                    evaluations: e,
                })
                .collect(),
            wall_time_seconds: 0.5,
        }
    }

    #[test]
    fn lower_median_convention() {
        assert_eq!(lower_median(&[100u64, 200, 300, 400]), Some(200));
        assert_eq!(lower_median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(lower_median::<u64>(&[]), None);
    }

    #[test]
    fn success_ratio_and_medians() {
        let mut recs: Vec<RunRecord> = (0..29)
            .map(|t| record(0, t, &[(5.0, 10), (0.5, 20 + t as u64)], Some(1.0)))
            .collect();
        recs.push(record(0, 29, &[(5.0, 10), (2.0, 20)], Some(1.0)));
        let rows = summarize(&recs).unwrap();
        assert_eq!(rows.len(), 1);
        let r = &rows[0];
        assert_eq!(r.trials, 30);
        assert_eq!(r.success_rate, 29.0 / 30.0);
        assert_eq!(r.median_evals_to_target, Some(34));
        assert_eq!(r.best_objective, 0.5);
        assert_eq!(r.median_objective, 0.5);
        assert_eq!(r.worst_objective, 2.0);
        assert_eq!(r.wall_time_seconds, 15.0);
    }

    #[test]
    fn all_misses_have_no_median() {
        let recs: Vec<RunRecord> = (0..4)
            .map(|t| record(0, t, &[(3.0, 10)], Some(1.0)))
            .collect();
        let r = summarize_group(&recs).unwrap();
        assert_eq!(r.success_rate, 0.0);
        assert_eq!(r.median_evals_to_target, None);
    }

    #[test]
    fn empty_group_is_an_error() {
        assert!(matches!(
            summarize_group(&[]),
            Err(HarnessError::EmptyGroup)
        ));
        assert!(summarize(&[]).is_err());
    }

    #[test]
    fn groups_split_on_cell() {
        let recs = vec![
            record(0, 0, &[(1.0, 1)], None),
            record(0, 1, &[(1.0, 1)], None),
            record(1, 0, &[(1.0, 1)], None),
        ];
        let rows = summarize(&recs).unwrap();
        assert_eq!(rows.iter().map(|r| r.trials).collect::<Vec<_>>(), [2, 1]);
    }
}
