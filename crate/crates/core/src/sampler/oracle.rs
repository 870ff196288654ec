use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigUint;

use crate::energy::{EnergyModel, SudokuEnergy};
use crate::error::SamplerError;
use crate::grid::{count_states, Grid, SudokuPuzzle};

/// Largest state space [`enumerate_stationary`] will walk.
pub const ENUMERATION_LIMIT: u64 = 100_000;

/// Exact `exp(-λQ(x)) / k` over every state of a small sudoku puzzle.
///
/// `k` is the explicit finite sum. Energies are shifted by their minimum
/// before exponentiating, which leaves the normalised values unchanged.
pub fn enumerate_stationary(
    puzzle: &SudokuPuzzle,
    lambda: f64,
) -> Result<BTreeMap<Grid, f64>, SamplerError> {
    let count = count_states(puzzle);
    if count > BigUint::from(ENUMERATION_LIMIT) {
        return Err(SamplerError::TooLarge(count.to_string()));
    }
    let model = SudokuEnergy::new(puzzle.n());
    let base: Vec<u32> = (0..puzzle.n() * puzzle.n())
        .map(|c| puzzle.clue(c).unwrap_or(0))
        .collect();

    let per_block: Vec<Vec<Vec<u32>>> = puzzle
        .missing_values()
        .iter()
        .map(|m| m.iter().copied().permutations(m.len()).collect())
        .collect();

    let mut states = Vec::new();
    for choice in per_block.iter().map(|p| p.iter()).multi_cartesian_product() {
        let mut cells = base.clone();
        for (free, values) in puzzle.free_cells().iter().zip(&choice) {
            for (&idx, &v) in free.iter().zip(values.iter()) {
                cells[idx] = v;
            }
        }
        let grid = Grid::new(puzzle.n(), cells)?;
        let q = model.full_energy(&grid);
        states.push((grid, q));
    }

    let q_min = states.iter().map(|&(_, q)| q).min().unwrap_or(0);
    let weights: Vec<f64> = states
        .iter()
        .map(|&(_, q)| (-lambda * (q - q_min) as f64).exp())
        .collect();
    let k: f64 = weights.iter().sum();
    Ok(states
        .into_iter()
        .zip(weights)
        .map(|((g, _), w)| (g, w / k))
        .collect())
}

/// Total-variation distance between two distributions over the same keys;
/// keys missing from one side count as probability zero.
pub fn total_variation(a: &BTreeMap<Grid, f64>, b: &BTreeMap<Grid, f64>) -> f64 {
    let mut sum = 0.0;
    for (g, &p) in a {
        sum += (p - b.get(g).copied().unwrap_or(0.0)).abs();
    }
    for (g, &p) in b {
        if !a.contains_key(g) {
            sum += p;
        }
    }
    sum / 2.0
}
