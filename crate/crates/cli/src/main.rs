mod args;
mod report;

use std::fs;
use std::io::{BufWriter, ErrorKind, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::Parser;
use gibbs_grid::{
    build_magic_spec, count_states, parse_magic_spec, parse_sudoku, run_chains, scientific,
    verify_magic, verify_sudoku, write_trace_csv, BlockLayout, ChainConfig, Grid, LambdaSchedule,
    MagicSpec, MagicVariant, Mode, Problem, SudokuPuzzle,
};

use crate::args::{Cli, Command, Family, RunArgs};
use crate::report::{Outcome, RunReport};

const EXIT_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

/// Writes to stdout, treating a closed pipe (e.g. `| head`) as success.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Solve { puzzle, run } => {
            let puzzle = read_puzzle(&puzzle)?;
            sample(
                Problem::Sudoku(puzzle),
                &run,
                Mode::Minimize,
                1.0,
                5_000_000,
            )
        }
        Command::Magic { variant, spec, run } => {
            let spec = match spec {
                Some(path) => read_spec(&path)?,
                None => build_magic_spec(&variant.parse::<MagicVariant>()?)?,
            };
            sample(
                Problem::Magic(spec),
                &run,
                Mode::Minimize,
                0.444,
                10_000_000,
            )
        }
        Command::Anti { puzzle, run } => {
            let puzzle = read_puzzle(&puzzle)?;
            sample(Problem::Sudoku(puzzle), &run, Mode::Maximize, -1.0, 100_000)
        }
        Command::Verify {
            grid,
            family,
            variant,
            spec,
            puzzle,
        } => verify(&grid, family, variant, spec.as_deref(), puzzle.as_deref()),
        Command::Count { puzzle } => {
            let puzzle = read_puzzle(&puzzle)?;
            let total = count_states(&puzzle);
            let free: Vec<String> = puzzle.free_counts().iter().map(usize::to_string).collect();
            emit(&format!(
                "free_per_block: {}\nstates: {total}\napprox: {}\n",
                free.join(" "),
                scientific(&total, 4)
            ));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_puzzle(path: &Path) -> Result<SudokuPuzzle> {
    parse_sudoku(&read_text(path)?).with_context(|| format!("parsing puzzle {}", path.display()))
}

fn read_spec(path: &Path) -> Result<MagicSpec> {
    parse_magic_spec(&read_text(path)?).with_context(|| format!("parsing spec {}", path.display()))
}

fn schedule(run: &RunArgs, default_lambda: f64) -> Result<LambdaSchedule> {
    Ok(match (run.lambda, run.ramp) {
        (_, Some((l0, growth, max))) => LambdaSchedule::ramp(l0, growth, max)?,
        (Some(l), None) => LambdaSchedule::constant(l)?,
        (None, None) => LambdaSchedule::constant(default_lambda)?,
    })
}

fn sample(
    problem: Problem,
    run: &RunArgs,
    mode: Mode,
    default_lambda: f64,
    default_iters: u64,
) -> Result<ExitCode> {
    let schedule = schedule(run, default_lambda)?;
    if mode == Mode::Maximize && !schedule.is_negative() {
        bail!("anti mode needs a negative constant --lambda");
    }
    let config = ChainConfig {
        iterations: run.iters.unwrap_or(default_iters),
        schedule,
        seed: run.seed,
        mode,
        stop_on_hit: !run.run_full,
        trace_every: run.trace_every,
    };

    let started = Instant::now();
    let multi = run_chains(&problem, &config, run.chains, run.chains_race)?;
    let report = RunReport::new(&multi, run.seed, mode == Mode::Maximize, started.elapsed());

    if report.outcome == Outcome::Solved {
        self_check(&problem, &report.grid)?;
    }
    emit(&report.to_string());
    let secs = report.wall_time.as_secs_f64();
    eprintln!(
        "elapsed: {secs:.3}s ({:.0} iterations/s)",
        report.iterations as f64 / secs.max(1e-9)
    );

    if let Some(path) = &run.trace {
        let file =
            fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        write_trace_csv(&multi.best().trace, run.discard, BufWriter::new(file))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &run.out {
        fs::write(path, report.grid.to_text())
            .with_context(|| format!("writing {}", path.display()))?;
    }

    Ok(match report.outcome {
        Outcome::Solved | Outcome::Maximized => ExitCode::SUCCESS,
        Outcome::BudgetExhausted => ExitCode::from(EXIT_FAILED),
    })
}

/// A grid reported as solved must pass the independent verifier.
fn self_check(problem: &Problem, grid: &Grid) -> Result<()> {
    let report = match problem {
        Problem::Sudoku(p) => verify_sudoku(grid, p.layout(), Some(p))?,
        Problem::Magic(s) => verify_magic(grid, s)?,
    };
    if !report.passed() {
        bail!("internal error: chain reported Q = 0 but verification failed\n{report}");
    }
    Ok(())
}

fn verify(
    grid: &Path,
    family: Family,
    variant: Option<String>,
    spec: Option<&Path>,
    puzzle: Option<&Path>,
) -> Result<ExitCode> {
    let grid = Grid::parse(&read_text(grid)?)
        .with_context(|| format!("parsing grid {}", grid.display()))?;
    let report = match family {
        Family::Sudoku => {
            let layout = match grid.n() {
                9 => BlockLayout::sudoku9(),
                4 => BlockLayout::new(4, 2, 2)?,
                n => bail!("no sudoku layout for a {n}x{n} grid"),
            };
            let puzzle = puzzle.map(read_puzzle).transpose()?;
            verify_sudoku(&grid, &layout, puzzle.as_ref())?
        }
        Family::Magic => {
            let spec = match (spec, variant) {
                (Some(path), _) => read_spec(path)?,
                (None, Some(v)) => build_magic_spec(&v.parse::<MagicVariant>()?)?,
                (None, None) => build_magic_spec(&default_variant(grid.n()))?,
            };
            verify_magic(&grid, &spec)?
        }
    };
    emit(&report.to_string());
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    })
}

fn default_variant(n: usize) -> MagicVariant {
    match n {
        8 => MagicVariant::Classic8,
        10 => MagicVariant::TenBlock10,
        _ => MagicVariant::Custom {
            n,
            block_rows: 1,
            block_cols: 1,
            anchors: Vec::new(),
        },
    }
}
