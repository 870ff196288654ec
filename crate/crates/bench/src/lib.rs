//! Shared inputs for the criterion benchmarks.

use gibbs_grid::{build_magic_spec, parse_sudoku, random_permutation, Grid, MagicVariant, Problem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const PAPER_PUZZLE: &str =
    "53..7....6..195....98....6.8...6...34..8.3..17...2...6.6....28....419..5....8..79";

pub fn paper_sudoku() -> Problem {
    Problem::Sudoku(parse_sudoku(PAPER_PUZZLE).expect("fixture parses"))
}

pub fn magic(variant: MagicVariant) -> Problem {
    Problem::Magic(build_magic_spec(&variant).expect("named variants build"))
}

pub fn shuffled_square(n: usize, seed: u64) -> Grid {
    random_permutation(n, &mut ChaCha8Rng::seed_from_u64(seed)).into_grid()
}
