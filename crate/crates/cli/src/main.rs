//! `fold`: run lattice peptide-folding experiments from JSON configs.

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use membranefold::harness::{self, ExperimentConfig, SolverChoice};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "fold",
    version,
    about = "Lattice peptide folding in layered solvents: exact and variational ground states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write result.json, structure.xyz, summary.csv.
    Run(RunArgs),
    /// Run a grid of interface offsets x polarity contrasts from one base config.
    Sweep(SweepArgs),
    /// Check that a config parses and validates, without running anything.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Experiment config (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Override the config's solver: exact, vqe, or both.
    #[arg(long)]
    solver: Option<SolverChoice>,
    /// Override the config's master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the config's output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Base experiment config (JSON); offset and contrast are replaced per run.
    #[arg(long)]
    config: PathBuf,
    /// Comma-separated interface offsets.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    offsets: Vec<f64>,
    /// Comma-separated polarity contrasts.
    #[arg(long = "delta-p", value_delimiter = ',', required = true)]
    delta_p: Vec<f64>,
    /// Override the config's master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the sweep root directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    config: PathBuf,
}

fn load(path: &Path) -> Result<ExperimentConfig> {
    ExperimentConfig::load(path).with_context(|| format!("config {}", path.display()))
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run(args) => {
            let mut config = load(&args.config)?;
            if let Some(solver) = args.solver {
                config.solver = solver;
            }
            if let Some(seed) = args.seed {
                config.seed = seed;
            }
            if let Some(out) = args.out {
                config.out_dir = Some(out);
            }
            let output = harness::run(&config)?;
            let record = &output.record;
            println!(
                "{} {} total={} bits={} end_to_end_sq={}",
                config.sequence,
                config.mode,
                record.breakdown.total,
                record.best_bits,
                record.metrics.end_to_end_sq
            );
            println!("wrote {}", output.result_path.display());
        }
        Command::Sweep(args) => {
            let mut base = load(&args.config)?;
            if let Some(seed) = args.seed {
                base.seed = seed;
            }
            if let Some(out) = args.out {
                base.out_dir = Some(out);
            }
            let sweep = harness::sweep(&base, &args.offsets, &args.delta_p)?;
            let mut failures = 0usize;
            for entry in &sweep.entries {
                match &entry.outcome {
                    Ok(output) => println!(
                        "da={} dp={} total={} -> {}",
                        entry.delta_a,
                        entry.delta_p,
                        output.record.breakdown.total,
                        output.out_dir.display()
                    ),
                    Err(err) => {
                        failures += 1;
                        eprintln!("da={} dp={} failed: {err}", entry.delta_a, entry.delta_p);
                    }
                }
            }
            println!("summary {}", sweep.summary_path.display());
            if failures > 0 {
                bail!("{failures} of {} sweep runs failed", sweep.entries.len());
            }
        }
        Command::Validate(args) => {
            let config = load(&args.config)?;
            println!(
                "ok: {} ({} beads), mode {}, solver {}",
                config.sequence,
                config.sequence.chars().count(),
                config.mode,
                config.solver
            );
        }
    }
    Ok(())
}
