//! Metropolis sampling from `f(x) ∝ exp(-λ Q(x))` with swap proposals.
//!
//! # Reproducibility
//!
//! Each chain owns one [`ChaCha8Rng`] stream seeded with
//! `ChaCha8Rng::seed_from_u64(seed)`. The initial state is drawn first
//! (per-block shuffles in block order for sudoku, one shuffle of `1..=n²` for
//! magic squares). Every step then draws, in order: the block (block-swap
//! only), the two cells of the pair, and a uniform `[0, 1)` variate for the
//! accept test. The accept variate is drawn only when the acceptance
//! probability is below one, so improving and neutral moves consume nothing.
//! Multi-chain runs seed chain `k` with `seed + k`.

mod oracle;
mod proposal;

use std::io::{self, Write};
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use oracle::{enumerate_stationary, total_variation, ENUMERATION_LIMIT};
pub use proposal::ProposalKernel;

use crate::energy::{EnergyModel, MagicSpec, SudokuEnergy};
use crate::error::SamplerError;
use crate::grid::{random_fill, random_permutation, Grid, SudokuPuzzle};
use crate::schedule::LambdaSchedule;

/// A puzzle family instance the chain can run on.
#[derive(Debug, Clone, PartialEq)]
pub enum Problem {
    Sudoku(SudokuPuzzle),
    Magic(MagicSpec),
}

impl Problem {
    pub fn n(&self) -> usize {
        match self {
            Self::Sudoku(p) => p.n(),
            Self::Magic(s) => s.n(),
        }
    }

    pub fn kernel(&self) -> ProposalKernel {
        match self {
            Self::Sudoku(p) => ProposalKernel::block_swap(p),
            Self::Magic(s) => ProposalKernel::free_swap(s.n()),
        }
    }

    /// A random starting state drawn from `rng`.
    pub fn initial_state<R: Rng + ?Sized>(&self, rng: &mut R) -> Grid {
        match self {
            Self::Sudoku(p) => random_fill(p, rng).into_grid(),
            Self::Magic(s) => random_permutation(s.n(), rng).into_grid(),
        }
    }

    /// Checks the state-space invariant of this family.
    pub fn check_state(&self, grid: &Grid) -> Result<(), SamplerError> {
        match self {
            Self::Sudoku(p) => p.check_state(grid)?,
            Self::Magic(s) => {
                if grid.n() != s.n() || !grid.is_permutation() {
                    return Err(crate::error::GridError::Binding(format!(
                        "not a permutation of 1..={}",
                        s.n() * s.n()
                    ))
                    .into());
                }
            }
        }
        Ok(())
    }
}

impl EnergyModel for Problem {
    fn full_energy(&self, grid: &Grid) -> u64 {
        match self {
            Self::Sudoku(p) => SudokuEnergy::new(p.n()).full_energy(grid),
            Self::Magic(s) => s.full_energy(grid),
        }
    }

    fn delta_energy(&self, grid: &Grid, i: usize, j: usize) -> i64 {
        match self {
            Self::Sudoku(p) => SudokuEnergy::new(p.n()).delta_energy(grid, i, j),
            Self::Magic(s) => s.delta_energy(grid, i, j),
        }
    }
}

/// `min{1, exp(-λ ΔQ)}`.
#[inline]
pub fn accept_probability(delta_q: i64, lambda: f64) -> f64 {
    let exponent = -lambda * delta_q as f64;
    if exponent >= 0.0 {
        1.0
    } else {
        exponent.exp()
    }
}

/// Result of one Metropolis step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub proposal: Option<(usize, usize)>,
    pub accepted: bool,
    /// Energy of the state after the step.
    pub q: u64,
}

/// One Metropolis step in place: propose a swap, accept it with
/// [`accept_probability`], otherwise leave `grid` untouched.
pub fn step<M, R>(
    grid: &mut Grid,
    q: u64,
    model: &M,
    kernel: &ProposalKernel,
    lambda: f64,
    rng: &mut R,
) -> Result<Step, SamplerError>
where
    M: EnergyModel + ?Sized,
    R: Rng + ?Sized,
{
    let (i, j) = kernel.propose(rng)?;
    let delta = model.delta_energy(grid, i, j);
    let p = accept_probability(delta, lambda);
    let accepted = p >= 1.0 || rng.random::<f64>() < p;
    let q = if accepted {
        grid.swap_cells(i, j);
        (q as i64 + delta) as u64
    } else {
        q
    };
    Ok(Step {
        proposal: Some((i, j)),
        accepted,
        q,
    })
}

/// Whether the chain hunts for low or high energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Minimize,
    /// Anti mode: a negative `λ` favours high `Q`; the best state is the
    /// highest-energy one visited.
    Maximize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainConfig {
    /// Number of steps after the initial state. Zero evaluates the initial
    /// state only.
    pub iterations: u64,
    pub schedule: LambdaSchedule,
    pub seed: u64,
    pub mode: Mode,
    /// Return at the first `Q = 0`. Ignored in [`Mode::Maximize`].
    pub stop_on_hit: bool,
    /// Trace stride; hits are always traced.
    pub trace_every: u64,
}

impl Default for ChainConfig {
    fn default() -> Self {
        Self {
            iterations: 1_000_000,
            schedule: LambdaSchedule::default(),
            seed: 0,
            mode: Mode::Minimize,
            stop_on_hit: true,
            trace_every: 1000,
        }
    }
}

impl ChainConfig {
    pub fn validate(&self) -> Result<(), SamplerError> {
        if self.trace_every == 0 {
            return Err(SamplerError::Config(
                "trace_every must be at least 1".into(),
            ));
        }
        match (self.mode, self.schedule.is_negative()) {
            (Mode::Minimize, true) => Err(SamplerError::Config(
                "a negative λ only makes sense in maximize mode".into(),
            )),
            (Mode::Maximize, false) => Err(SamplerError::Config(
                "maximize mode needs a constant negative λ".into(),
            )),
            _ => Ok(()),
        }
    }
}

/// One recorded point of the energy trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TracePoint {
    pub iter: u64,
    pub q: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainResult {
    /// First iteration at which `Q = 0`; iteration 0 is the initial state.
    pub first_hit: Option<u64>,
    /// Iterations spent at `Q = 0`, repeats included.
    pub hit_count: u64,
    pub best_state: Grid,
    pub best_q: u64,
    pub trace: Vec<TracePoint>,
    pub accept_count: u64,
    /// Steps actually taken, which is below the budget after an early stop.
    pub iterations: u64,
    pub initial_q: u64,
    pub final_state: Grid,
    pub final_q: u64,
}

impl ChainResult {
    pub fn solved(&self) -> bool {
        self.first_hit.is_some()
    }
}

/// Runs one chain from a random start.
pub fn run_chain(problem: &Problem, config: &ChainConfig) -> Result<ChainResult, SamplerError> {
    run_chain_until(problem, config, || false)
}

fn run_chain_until(
    problem: &Problem,
    config: &ChainConfig,
    cancelled: impl Fn() -> bool,
) -> Result<ChainResult, SamplerError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let grid = problem.initial_state(&mut rng);
    let kernel = problem.kernel();
    // Dispatch once so the hot loop is monomorphic.
    match problem {
        Problem::Sudoku(p) => drive(
            &SudokuEnergy::new(p.n()),
            &kernel,
            grid,
            config,
            &mut rng,
            cancelled,
        ),
        Problem::Magic(s) => drive(s, &kernel, grid, config, &mut rng, cancelled),
    }
}

const CANCEL_CHECK_MASK: u64 = (1 << 14) - 1;

fn drive<M: EnergyModel + ?Sized>(
    model: &M,
    kernel: &ProposalKernel,
    mut grid: Grid,
    config: &ChainConfig,
    rng: &mut ChaCha8Rng,
    cancelled: impl Fn() -> bool,
) -> Result<ChainResult, SamplerError> {
    let maximize = config.mode == Mode::Maximize;
    let stop_on_hit = config.stop_on_hit && !maximize;
    let movable = kernel.has_moves();

    let mut q = model.full_energy(&grid);
    let initial_q = q;
    let mut best_q = q;
    let mut best_state = grid.clone();
    let mut first_hit = None;
    let mut hit_count = 0;
    let mut accept_count = 0;
    let mut trace = Vec::new();
    let mut t = 0u64;

    loop {
        if q == 0 {
            hit_count += 1;
            first_hit.get_or_insert(t);
            trace.push(TracePoint { iter: t, q });
        } else if t % config.trace_every == 0 {
            trace.push(TracePoint { iter: t, q });
        }
        if (stop_on_hit && q == 0) || t == config.iterations {
            break;
        }
        if t & CANCEL_CHECK_MASK == 0 && t > 0 && cancelled() {
            break;
        }

        let lambda = config.schedule.lambda_at(t);
        t += 1;
        if !movable {
            continue;
        }
        let s = step(&mut grid, q, model, kernel, lambda, rng)?;
        if s.accepted {
            accept_count += 1;
            q = s.q;
            let better = if maximize { q > best_q } else { q < best_q };
            if better {
                best_q = q;
                best_state.clone_from(&grid);
            }
        }
    }

    Ok(ChainResult {
        first_hit,
        hit_count,
        best_state,
        best_q,
        trace,
        accept_count,
        iterations: t,
        initial_q,
        final_state: grid,
        final_q: q,
    })
}

/// Outcome of several independent chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiChainResult {
    /// One entry per chain index; `None` for chains abandoned in race mode.
    pub chains: Vec<Option<ChainResult>>,
    /// Index of the reported chain: the lowest index that solved, otherwise
    /// the best energy with ties going to the lower index.
    pub chosen: usize,
}

impl MultiChainResult {
    pub fn best(&self) -> &ChainResult {
        self.chains[self.chosen]
            .as_ref()
            .expect("the chosen chain always completes")
    }
}

/// Runs `chains` chains with seeds `seed, seed + 1, ...`.
///
/// With `race`, once chain `k` solves, chains with index above `k` are
/// abandoned; lower-index chains still run to completion, so the chosen
/// chain does not depend on thread timing.
pub fn run_chains(
    problem: &Problem,
    config: &ChainConfig,
    chains: usize,
    race: bool,
) -> Result<MultiChainResult, SamplerError> {
    if chains == 0 {
        return Err(SamplerError::Config("need at least one chain".into()));
    }
    config.validate()?;
    let lowest_solved = AtomicUsize::new(usize::MAX);
    let results: Vec<Result<Option<ChainResult>, SamplerError>> = (0..chains)
        .into_par_iter()
        .map(|k| {
            let cfg = ChainConfig {
                seed: config.seed.wrapping_add(k as u64),
                ..config.clone()
            };
            let abandoned = || race && lowest_solved.load(Ordering::Relaxed) < k;
            if abandoned() {
                return Ok(None);
            }
            let r = run_chain_until(problem, &cfg, abandoned)?;
            if r.solved() {
                lowest_solved.fetch_min(k, Ordering::Relaxed);
            } else if abandoned() {
                return Ok(None);
            }
            Ok(Some(r))
        })
        .collect();
    let chains: Vec<Option<ChainResult>> = results.into_iter().collect::<Result<_, _>>()?;

    let maximize = config.mode == Mode::Maximize;
    let chosen = chains
        .iter()
        .position(|c| c.as_ref().is_some_and(ChainResult::solved) && !maximize)
        .unwrap_or_else(|| {
            let mut best: Option<(usize, u64)> = None;
            for (k, c) in chains.iter().enumerate() {
                let Some(c) = c else { continue };
                let improves = match best {
                    None => true,
                    Some((_, q)) if maximize => c.best_q > q,
                    Some((_, q)) => c.best_q < q,
                };
                if improves {
                    best = Some((k, c.best_q));
                }
            }
            best.map_or(0, |(k, _)| k)
        });
    Ok(MultiChainResult { chains, chosen })
}

/// Writes the trace as CSV with header `iter,Q`, skipping the first
/// `discard` rows.
pub fn write_trace_csv<W: Write>(
    trace: &[TracePoint],
    discard: usize,
    mut out: W,
) -> io::Result<()> {
    writeln!(out, "iter,Q")?;
    for p in trace.iter().skip(discard) {
        writeln!(out, "{},{}", p.iter, p.q)?;
    }
    out.flush()
}
