use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "gibbs-grid",
    version,
    about = "Solve sudoku and find magic squares with Metropolis Markov chains"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a sudoku puzzle (81 characters, '.' or '0' for blanks).
    Solve {
        puzzle: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Search for a magic square meeting a named or custom constraint set.
    Magic {
        /// classic-8, five-block-8 or ten-block-10.
        #[arg(long, default_value = "classic-8", conflicts_with = "spec")]
        variant: String,
        /// Custom constraint spec file.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Sample with a negative λ to find block-valid tables with high Q.
    Anti {
        puzzle: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check a grid constraint by constraint.
    Verify {
        grid: PathBuf,
        #[arg(long, value_enum)]
        family: Family,
        /// Magic variant; defaults from the grid size (8: classic-8, 10: ten-block-10).
        #[arg(long, conflicts_with = "spec")]
        variant: Option<String>,
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Sudoku puzzle whose clues the grid must keep.
        #[arg(long)]
        puzzle: Option<PathBuf>,
    },
    /// Count the states of a sudoku puzzle's constrained space.
    Count { puzzle: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Sudoku,
    Magic,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Constant λ. Defaults: 1 for solve, 0.444 for magic, -1 for anti.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "ramp")]
    pub lambda: Option<f64>,
    /// Geometric ramp `lambda0,growth,max`.
    #[arg(long, value_parser = parse_ramp)]
    pub ramp: Option<(f64, f64, f64)>,
    /// Iteration budget per chain.
    #[arg(long)]
    pub iters: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Independent chains, seeded seed, seed+1, ...
    #[arg(long, default_value_t = 1)]
    pub chains: usize,
    /// Abandon higher-index chains once one solves.
    #[arg(long)]
    pub chains_race: bool,
    /// Write the energy trace as CSV.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    pub trace_every: u64,
    /// Keep sampling after the first hit.
    #[arg(long)]
    pub run_full: bool,
    /// Omit the first N trace rows.
    #[arg(long, default_value_t = 0)]
    pub discard: usize,
    /// Also write the reported grid to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_ramp(s: &str) -> Result<(f64, f64, f64), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(format!("expected lambda0,growth,max, got {s:?}"));
    };
    let num = |t: &str| t.parse::<f64>().map_err(|_| format!("not a number: {t:?}"));
    Ok((num(a)?, num(b)?, num(c)?))
}
