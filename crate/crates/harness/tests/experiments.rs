use std::fs;
use std::path::Path;
use std::process::Command;

use cuckoo_harness::records::load_records;
use cuckoo_harness::summary::{read_summary, summary_to_csv};
use cuckoo_harness::{run_experiment, summarize, write_outputs, ExperimentSpec, RunRecord};

const SMALL: &str = r#"
trials = 3
base_seed = 40

[stop]
max_evaluations = 2000
target_objective = 1e-2

[[problems]]
name = "sphere"
dimension = 3

[[algorithms]]
name = "cuckoo_search"
[algorithms.params]
nests = 10
"#;

fn files_under(root: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for e in fs::read_dir(&dir).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                let rel = p.strip_prefix(root).unwrap().display().to_string();
                out.push((rel, fs::read(&p).unwrap()));
            }
        }
    }
    out.sort();
    out
}

#[test]
fn one_cell_three_trials() {
    let spec = ExperimentSpec::from_toml(SMALL).unwrap();
    let outcome = run_experiment(&spec, Some(2)).unwrap();
    assert_eq!(outcome.records.len(), 3);
    assert_eq!(outcome.summary.len(), 1);
    assert!(outcome.all_completed());
    let seeds: Vec<u64> = outcome.records.iter().map(|r| r.meta.seed).collect();
    assert_eq!(seeds, [40, 41, 42]);

    let dir = tempfile::tempdir().unwrap();
    write_outputs(&outcome, dir.path()).unwrap();
    let runs = files_under(&dir.path().join("runs"));
    assert_eq!(runs.len(), 6);
    let csv = String::from_utf8(runs[0].1.clone()).unwrap();
    assert!(runs[0]
        .0
        .ends_with("sphere_d3__cuckoo_search/trial_0000.csv"));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("iteration,best_objective,evaluations"));
    assert_eq!(lines.count(), outcome.records[0].history.len());
}

#[test]
fn reruns_are_byte_identical_and_summaries_recompute() {
    let spec = ExperimentSpec::from_toml(SMALL).unwrap();
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    write_outputs(&run_experiment(&spec, Some(1)).unwrap(), a.path()).unwrap();
    write_outputs(&run_experiment(&spec, Some(3)).unwrap(), b.path()).unwrap();
    assert_eq!(
        files_under(&a.path().join("runs")),
        files_under(&b.path().join("runs"))
    );

    let written = fs::read(a.path().join("summary.csv")).unwrap();
    let records = load_records(a.path()).unwrap();
    let again = summarize(&records).unwrap();
    assert_eq!(summary_to_csv(&again).unwrap(), written);
    assert_eq!(read_summary(a.path()).unwrap(), again);
}

#[test]
fn unresolvable_problem_fails_before_running() {
    // rosenbrock needs d >= 2
    let bad = SMALL
        .replace("dimension = 3", "dimension = 1")
        .replace("\"sphere\"", "\"rosenbrock\"");
    let spec = ExperimentSpec::from_toml(&bad).unwrap();
    assert!(run_experiment(&spec, None).is_err());
}

#[test]
fn failed_runs_are_recorded_and_counted_as_misses() {
    let spec = ExperimentSpec::from_toml(SMALL).unwrap();
    let mut outcome = run_experiment(&spec, Some(1)).unwrap();
    let failed = RunRecord::from_result(
        outcome.records[1].meta.clone(),
        Err(cuckoo_core::Error::NonFiniteObjective {
            position: vec![1.0, 2.0, 3.0],
        }),
        0.0,
    );
    outcome.records[1] = failed;
    assert!(!outcome.all_completed());
    outcome.summary = summarize(&outcome.records).unwrap();
    assert_eq!(outcome.summary[0].worst_objective, f64::INFINITY);

    let dir = tempfile::tempdir().unwrap();
    write_outputs(&outcome, dir.path()).unwrap();
    let loaded = load_records(dir.path()).unwrap();
    assert!(loaded[1].failed());
    assert!(loaded[1].history.is_empty());
    assert!(loaded[1]
        .meta
        .error
        .as_deref()
        .unwrap()
        .contains("non-finite"));
    assert_eq!(summarize(&loaded).unwrap(), outcome.summary);
}

#[test]
fn cli_run_and_summarize() {
    let exe = env!("CARGO_BIN_EXE_cuckoo");
    let dir = tempfile::tempdir().unwrap();
    let spec_path = dir.path().join("exp.toml");
    fs::write(&spec_path, SMALL).unwrap();
    let out = dir.path().join("out");

    let status = Command::new(exe)
        .args([
            "run",
            spec_path.to_str().unwrap(),
            "--workers",
            "2",
            "--output",
        ])
        .arg(&out)
        .output()
        .unwrap();
    assert!(
        status.status.success(),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    let stdout = String::from_utf8(status.stdout).unwrap();
    assert!(stdout.starts_with(
        "problem,algorithm,trials,success_rate,median_evals_to_target,best_objective,median_objective,worst_objective,wall_time_seconds\n"
    ));
    let summary = fs::read(out.join("summary.csv")).unwrap();

    fs::remove_file(out.join("summary.csv")).unwrap();
    let status = Command::new(exe)
        .arg("summarize")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(fs::read(out.join("summary.csv")).unwrap(), summary);

    for cmd in ["list-problems", "list-algorithms"] {
        let o = Command::new(exe).arg(cmd).output().unwrap();
        assert!(o.status.success());
        assert!(!o.stdout.is_empty());
    }

    let missing = Command::new(exe)
        .args(["run", spec_path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(!missing.status.success(), "no output directory configured");
}

#[test]
fn example_file_parses() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../experiments/example.toml");
    let spec = ExperimentSpec::load(&path).unwrap();
    assert_eq!(spec.cells().unwrap().len(), 4);
}
