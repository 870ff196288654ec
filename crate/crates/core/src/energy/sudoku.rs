use crate::error::EnergyError;
use crate::grid::Grid;

use super::EnergyModel;

/// Row score for a standard sudoku line: sort the nine values ascending and
/// return `Σ |sorted[j] - j|` over `j = 1..=9`.
///
/// Zero exactly when the line is a permutation of `1..=9`; never above 36.
pub fn sudoku_row_score(row: &[u32]) -> Result<u32, EnergyError> {
    if row.len() != 9 {
        return Err(EnergyError::WrongLength {
            expected: 9,
            found: row.len(),
        });
    }
    if let Some(&value) = row.iter().find(|&&v| v == 0 || v > 9) {
        return Err(EnergyError::ValueOutOfRange { value, max: 9 });
    }
    Ok(line_score(9, row.iter().copied()))
}

/// Full sudoku energy of a 9x9 grid: the row score summed over all rows and
/// all columns.
pub fn sudoku_energy(grid: &Grid) -> Result<u64, EnergyError> {
    if grid.n() != 9 {
        return Err(EnergyError::SizeMismatch {
            spec: 9,
            grid: grid.n(),
        });
    }
    if let Some(&value) = grid.cells().iter().find(|&&v| v == 0 || v > 9) {
        return Err(EnergyError::ValueOutOfRange { value, max: 9 });
    }
    Ok(SudokuEnergy::new(9).full_energy(grid))
}

/// Sorted-deviation score of one line whose values lie in `1..=n`.
pub(crate) fn line_score(n: usize, values: impl Iterator<Item = u32>) -> u32 {
    let mut counts = Counts::new(n);
    for v in values {
        counts.add(v);
    }
    counts.score()
}

/// Value histogram of a line. The sorted sequence is implied by walking the
/// histogram in increasing value order.
struct Counts {
    n: usize,
    small: [u16; 33],
    large: Vec<u32>,
}

impl Counts {
    fn new(n: usize) -> Self {
        Self {
            n,
            small: [0; 33],
            large: if n > 32 { vec![0; n + 1] } else { Vec::new() },
        }
    }

    #[inline]
    fn add(&mut self, v: u32) {
        if self.n <= 32 {
            self.small[v as usize] += 1;
        } else {
            self.large[v as usize] += 1;
        }
    }

    #[inline]
    fn remove(&mut self, v: u32) {
        if self.n <= 32 {
            self.small[v as usize] -= 1;
        } else {
            self.large[v as usize] -= 1;
        }
    }

    #[inline]
    fn score(&self) -> u32 {
        let mut pos = 1i64;
        let mut total = 0i64;
        for v in 1..=self.n {
            let c = if self.n <= 32 {
                self.small[v] as u32
            } else {
                self.large[v]
            };
            for _ in 0..c {
                total += (v as i64 - pos).abs();
                pos += 1;
            }
        }
        total as u32
    }
}

/// Sudoku energy for an `n x n` grid with values in `1..=n`.
///
/// `full_energy` sums the line score over rows and columns; `delta_energy`
/// rescans only the rows and columns that contain one of the two cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SudokuEnergy {
    n: usize,
}

impl SudokuEnergy {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn row_counts(&self, grid: &Grid, r: usize) -> Counts {
        let mut c = Counts::new(self.n);
        for &v in grid.row(r) {
            c.add(v);
        }
        c
    }

    fn col_counts(&self, grid: &Grid, col: usize) -> Counts {
        let mut c = Counts::new(self.n);
        for r in 0..self.n {
            c.add(grid.at(r, col));
        }
        c
    }

    /// Change of one line's score when `leaving` is replaced by `arriving`.
    #[inline]
    fn line_delta(mut counts: Counts, leaving: u32, arriving: u32) -> i64 {
        let before = counts.score() as i64;
        counts.remove(leaving);
        counts.add(arriving);
        counts.score() as i64 - before
    }
}

impl EnergyModel for SudokuEnergy {
    fn full_energy(&self, grid: &Grid) -> u64 {
        debug_assert_eq!(grid.n(), self.n);
        let n = self.n;
        let rows: u64 = (0..n)
            .map(|r| line_score(n, grid.row(r).iter().copied()) as u64)
            .sum();
        let cols: u64 = (0..n)
            .map(|c| line_score(n, (0..n).map(|r| grid.at(r, c))) as u64)
            .sum();
        rows + cols
    }

    fn delta_energy(&self, grid: &Grid, i: usize, j: usize) -> i64 {
        let (a, b) = (grid.get(i), grid.get(j));
        if a == b {
            return 0;
        }
        let n = self.n;
        let (ri, ci) = (i / n, i % n);
        let (rj, cj) = (j / n, j % n);
        let mut delta = 0;
        if ri != rj {
            delta += Self::line_delta(self.row_counts(grid, ri), a, b);
            delta += Self::line_delta(self.row_counts(grid, rj), b, a);
        }
        if ci != cj {
            delta += Self::line_delta(self.col_counts(grid, ci), a, b);
            delta += Self::line_delta(self.col_counts(grid, cj), b, a);
        }
        delta
    }
}
