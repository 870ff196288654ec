//! Score functions `Q(x)` for each puzzle family.
//!
//! Energies are exact non-negative integers and are zero exactly on
//! solutions. Every model offers an incremental swap delta; the brute-force
//! difference of two full evaluations is the reference it must agree with.

mod magic;
mod spec_file;
mod sudoku;

pub use magic::{
    build_magic_spec, magic_constant, magic_energy, Constraint, MagicSpec, MagicVariant,
};
pub use spec_file::parse_magic_spec;
pub use sudoku::{sudoku_energy, sudoku_row_score, SudokuEnergy};

use crate::error::GridError;
use crate::grid::{Grid, GridState};

/// An energy function over grids of one puzzle family.
pub trait EnergyModel {
    /// `Q(x)`, zero exactly on target states.
    fn full_energy(&self, grid: &Grid) -> u64;

    /// `Q(after) - Q(before)` for exchanging cells `i` and `j`.
    ///
    /// The swap is not applied and its legality is not checked here.
    fn delta_energy(&self, grid: &Grid, i: usize, j: usize) -> i64 {
        brute_force_delta(self, grid, i, j)
    }
}

/// Swap delta by two full evaluations.
pub fn brute_force_delta<M: EnergyModel + ?Sized>(
    model: &M,
    grid: &Grid,
    i: usize,
    j: usize,
) -> i64 {
    let before = model.full_energy(grid) as i64;
    let mut swapped = grid.clone();
    swapped.swap_cells(i, j);
    model.full_energy(&swapped) as i64 - before
}

/// Swap delta for a bound state, rejecting swaps that break its binding.
pub fn checked_delta<M: EnergyModel + ?Sized>(
    model: &M,
    state: &GridState<'_>,
    i: usize,
    j: usize,
) -> Result<i64, GridError> {
    state.check_swap(i, j)?;
    Ok(model.delta_energy(state.grid(), i, j))
}

impl<M: EnergyModel + ?Sized> EnergyModel for &M {
    fn full_energy(&self, grid: &Grid) -> u64 {
        (**self).full_energy(grid)
    }

    fn delta_energy(&self, grid: &Grid, i: usize, j: usize) -> i64 {
        (**self).delta_energy(grid, i, j)
    }
}
