//! Sudoku solving and magic-square search by Metropolis sampling.
//!
//! Each puzzle family defines an integer energy `Q(x)` that is zero exactly
//! on solutions. A Markov chain of swap moves samples from
//! `f(x) ∝ exp(-λ Q(x))` over the constrained grids, and a state with
//! `Q = 0` is a solution.
//!
//! ```
//! use gibbs_grid::{parse_sudoku, run_chain, ChainConfig, LambdaSchedule, Problem};
//!
//! let puzzle = parse_sudoku(
//!     "534678912672195348198342567859761423426853791713924856961537284287419635345286.7.",
//! )
//! .unwrap();
//! let config = ChainConfig {
//!     iterations: 10_000,
//!     schedule: LambdaSchedule::Constant(1.0),
//!     seed: 1,
//!     ..ChainConfig::default()
//! };
//! let result = run_chain(&Problem::Sudoku(puzzle), &config).unwrap();
//! assert_eq!(result.best_q, 0);
//! ```

pub mod energy;
pub mod error;
pub mod grid;
pub mod sampler;
pub mod schedule;
pub mod verify;

pub use energy::{
    build_magic_spec, magic_constant, magic_energy, parse_magic_spec, sudoku_energy,
    sudoku_row_score, EnergyModel, MagicSpec, MagicVariant, SudokuEnergy,
};
pub use error::{EnergyError, GridError, SamplerError};
pub use grid::{
    count_states, parse_sudoku, random_fill, random_permutation, scientific, BlockLayout, Grid,
    GridState, SudokuPuzzle,
};
pub use sampler::{
    accept_probability, enumerate_stationary, run_chain, run_chains, step, write_trace_csv,
    ChainConfig, ChainResult, Mode, MultiChainResult, Problem, ProposalKernel, TracePoint,
};
pub use schedule::LambdaSchedule;
pub use verify::{verify_magic, verify_sudoku, VerifyReport};
