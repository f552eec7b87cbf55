use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use cuckoo_core::{corpus, AlgorithmParams, HillClimbParams};
use cuckoo_harness::experiment::ALGORITHM_NAMES;
use cuckoo_harness::records::load_records;
use cuckoo_harness::summary::{summary_to_csv, write_summary};
use cuckoo_harness::{run_experiment, summarize, write_outputs, ExperimentSpec};

#[derive(Parser)]
#[command(name = "cuckoo", version, about = "Seeded cuckoo search experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment file.
    Run {
        spec: PathBuf,
        /// Worker threads (default: the file's `workers`, else one per core).
        #[arg(long)]
        workers: Option<usize>,
        /// Results directory (default: the file's `output`).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Recompute summary.csv from the per-run records in a results directory.
    Summarize { results: PathBuf },
    /// List corpus problems.
    ListProblems,
    /// List algorithms and their default parameters.
    ListAlgorithms,
}

fn run(spec_path: PathBuf, workers: Option<usize>, output: Option<PathBuf>) -> Result<ExitCode> {
    let spec = ExperimentSpec::load(&spec_path)?;
    let out = output
        .or_else(|| spec.output.clone())
        .context("no output directory: pass --output or set `output` in the experiment file")?;
    let outcome = run_experiment(&spec, workers)?;
    write_outputs(&outcome, &out)?;
    print!("{}", String::from_utf8(summary_to_csv(&outcome.summary)?)?);

    let failed: Vec<_> = outcome.records.iter().filter(|r| r.failed()).collect();
    for r in &failed {
        eprintln!(
            "run failed: {} / {} trial {}: {}",
            r.meta.problem,
            r.meta.algorithm,
            r.meta.trial,
            r.meta.error.as_deref().unwrap_or_default()
        );
    }
    eprintln!(
        "{} runs written to {}",
        outcome.records.len(),
        out.display()
    );
    Ok(if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn main() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Run {
            spec,
            workers,
            output,
        } => run(spec, workers, output),
        Command::Summarize { results } => {
            let records = load_records(&results)?;
            let rows = summarize(&records)?;
            write_summary(&results, &rows)?;
            print!("{}", String::from_utf8(summary_to_csv(&rows)?)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::ListProblems => {
            for name in corpus::NAMES {
                let p = corpus::lookup(name, None)?;
                let dim = match corpus::fixed_dimension(name) {
                    Some(d) => format!("{d}"),
                    None => format!("any (default {})", corpus::DEFAULT_DIMENSION),
                };
                let r = corpus::reference_point(name, None)?;
                println!(
                    "{name:<14} dimension {dim:<18} constraints {:<2} reference f = {:e}",
                    p.num_inequality() + p.num_equality(),
                    r.objective
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ListAlgorithms => {
            for name in ALGORITHM_NAMES {
                let defaults = match name {
                    "cuckoo_search" => toml::to_string(&AlgorithmParams::default())?,
                    _ => toml::to_string(&HillClimbParams::default())?,
                };
                println!("{name}\n{}", indent(&defaults));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("    {l}\n")).collect()
}
