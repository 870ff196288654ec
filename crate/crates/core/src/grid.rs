//! Grids, block layouts, sudoku puzzles and the constrained state space.
//!
//! A [`Grid`] is a flat row-major sequence of positive integers. Sudoku
//! puzzles carry a parallel clue mask; the chain only ever permutes the free
//! cells of one block at a time, so every state it visits keeps each block a
//! permutation of `1..=n` with the clues in place. Magic squares have no
//! clues and every state is a permutation of `1..=n²`.

use std::fmt;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::GridError;

/// An `n x n` matrix of positive integers stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grid {
    n: usize,
    cells: Vec<u32>,
}

impl Grid {
    pub fn new(n: usize, cells: Vec<u32>) -> Result<Self, GridError> {
        if n == 0 || cells.len() != n * n {
            return Err(GridError::WrongLength {
                expected: n * n,
                found: cells.len(),
            });
        }
        if let Some((index, &value)) = cells.iter().enumerate().find(|(_, &v)| v == 0) {
            return Err(GridError::ValueOutOfRange {
                index,
                value,
                max: u32::MAX,
            });
        }
        Ok(Self { n, cells })
    }

    /// Builds a grid from rows; every row must have as many entries as there are rows.
    pub fn from_rows<R: AsRef<[u32]>>(rows: &[R]) -> Result<Self, GridError> {
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(GridError::Syntax {
                    line: r + 1,
                    reason: format!("expected {n} values, found {}", row.len()),
                });
            }
            cells.extend_from_slice(row);
        }
        Self::new(n, cells)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    #[inline]
    pub fn get(&self, index: usize) -> u32 {
        self.cells[index]
    }

    #[inline]
    pub fn at(&self, row: usize, col: usize) -> u32 {
        self.cells[row * self.n + col]
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.cells[r * self.n..(r + 1) * self.n]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.n).map(|r| self.at(r, c)).collect()
    }

    /// Exchanges two cells without checking any binding.
    #[inline]
    pub fn swap_cells(&mut self, i: usize, j: usize) {
        self.cells.swap(i, j);
    }

    pub fn transpose(&self) -> Grid {
        let n = self.n;
        let cells = (0..n * n).map(|k| self.at(k % n, k / n)).collect();
        Grid { n, cells }
    }

    /// True when the cells are exactly `1..=n²` in some order.
    pub fn is_permutation(&self) -> bool {
        let total = self.cells.len();
        let mut seen = vec![false; total + 1];
        for &v in &self.cells {
            let v = v as usize;
            if v == 0 || v > total || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// Renders `n` lines of space-separated integers, newline-terminated.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parses `n` non-blank lines of `n` whitespace-separated positive integers.
    pub fn parse(text: &str) -> Result<Self, GridError> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<u32>().map_err(|_| GridError::Syntax {
                        line: lineno + 1,
                        reason: format!("not a positive integer: {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(GridError::WrongLength {
                expected: 1,
                found: 0,
            });
        }
        Self::from_rows(&rows)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n {
            for (c, v) in self.row(r).iter().enumerate() {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

/// Rectangular blocks tiling an `n x n` grid.
///
/// Blocks are numbered row-major, and the cells inside each block are listed
/// row-major as well. `block_order` and `from_block_order` convert between
/// the row-major cell order and the concatenated per-block order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockLayout {
    n: usize,
    block_rows: usize,
    block_cols: usize,
    blocks: Vec<Vec<usize>>,
    cell_block: Vec<usize>,
}

impl BlockLayout {
    pub fn new(n: usize, block_rows: usize, block_cols: usize) -> Result<Self, GridError> {
        if n == 0
            || block_rows == 0
            || block_cols == 0
            || n % block_rows != 0
            || n % block_cols != 0
        {
            return Err(GridError::BadLayout {
                n,
                block_rows,
                block_cols,
            });
        }
        let bands = n / block_rows;
        let stacks = n / block_cols;
        let mut blocks = Vec::with_capacity(bands * stacks);
        let mut cell_block = vec![0; n * n];
        for band in 0..bands {
            for stack in 0..stacks {
                let id = blocks.len();
                let mut cells = Vec::with_capacity(block_rows * block_cols);
                for r in band * block_rows..(band + 1) * block_rows {
                    for c in stack * block_cols..(stack + 1) * block_cols {
                        let idx = r * n + c;
                        cells.push(idx);
                        cell_block[idx] = id;
                    }
                }
                blocks.push(cells);
            }
        }
        Ok(Self {
            n,
            block_rows,
            block_cols,
            blocks,
            cell_block,
        })
    }

    /// The standard 9x9 sudoku layout of nine 3x3 boxes.
    pub fn sudoku9() -> Self {
        Self::new(9, 3, 3).expect("3x3 boxes tile a 9x9 grid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn block_rows(&self) -> usize {
        self.block_rows
    }

    pub fn block_cols(&self) -> usize {
        self.block_cols
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, cell: usize) -> usize {
        self.cell_block[cell]
    }

    /// Cell values listed block by block.
    pub fn block_order(&self, grid: &Grid) -> Vec<u32> {
        self.blocks
            .iter()
            .flat_map(|b| b.iter().map(|&i| grid.get(i)))
            .collect()
    }

    /// Inverse of [`BlockLayout::block_order`].
    pub fn from_block_order(&self, values: &[u32]) -> Result<Grid, GridError> {
        if values.len() != self.n * self.n {
            return Err(GridError::WrongLength {
                expected: self.n * self.n,
                found: values.len(),
            });
        }
        let mut cells = vec![0; values.len()];
        for (&idx, &v) in self.blocks.iter().flatten().zip(values) {
            cells[idx] = v;
        }
        Grid::new(self.n, cells)
    }
}

/// A sudoku puzzle: a block layout plus fixed clue values.
///
/// The side length equals the block size (`block_rows * block_cols`), so each
/// block and each line must end up holding `1..=n`. The standard puzzle is
/// 9x9 with 3x3 boxes; smaller layouts such as 4x4 with 2x2 boxes are
/// supported for exhaustive checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SudokuPuzzle {
    layout: BlockLayout,
    /// Clue value per cell, 0 where the cell is free.
    clues: Vec<u32>,
    /// Free cells per block, row-major within the block.
    free: Vec<Vec<usize>>,
    /// Values absent from each block's clues, ascending.
    missing: Vec<Vec<u32>>,
}

impl SudokuPuzzle {
    /// Builds a puzzle from a clue vector (0 for blank) and checks that the
    /// clues within each block are distinct.
    pub fn new(layout: BlockLayout, clues: Vec<u32>) -> Result<Self, GridError> {
        let n = layout.n();
        if layout.block_rows() * layout.block_cols() != n {
            return Err(GridError::BadLayout {
                n,
                block_rows: layout.block_rows(),
                block_cols: layout.block_cols(),
            });
        }
        if clues.len() != n * n {
            return Err(GridError::WrongLength {
                expected: n * n,
                found: clues.len(),
            });
        }
        let mut free = Vec::with_capacity(n);
        let mut missing = Vec::with_capacity(n);
        for (b, cells) in layout.blocks().iter().enumerate() {
            let mut present = vec![false; n + 1];
            let mut block_free = Vec::new();
            for &idx in cells {
                let v = clues[idx];
                if v == 0 {
                    block_free.push(idx);
                    continue;
                }
                if v as usize > n {
                    return Err(GridError::ValueOutOfRange {
                        index: idx,
                        value: v,
                        max: n as u32,
                    });
                }
                if present[v as usize] {
                    return Err(GridError::DuplicateClue {
                        value: v,
                        block: b + 1,
                    });
                }
                present[v as usize] = true;
            }
            let block_missing: Vec<u32> =
                (1..=n as u32).filter(|&v| !present[v as usize]).collect();
            if block_missing.len() != block_free.len() {
                return Err(GridError::Malformed {
                    block: b + 1,
                    missing: block_missing.len(),
                    free: block_free.len(),
                });
            }
            free.push(block_free);
            missing.push(block_missing);
        }
        Ok(Self {
            layout,
            clues,
            free,
            missing,
        })
    }

    /// Parses the row-major character format: one character per cell, `1`-`9`
    /// for clues and `0` or `.` for blanks, whitespace ignored.
    pub fn parse_with_layout(text: &str, layout: BlockLayout) -> Result<Self, GridError> {
        let n = layout.n();
        let mut clues = Vec::with_capacity(n * n);
        for (pos, ch) in text.chars().filter(|c| !c.is_whitespace()).enumerate() {
            let v = match ch {
                '.' | '0' => 0,
                '1'..='9' => ch as u32 - '0' as u32,
                _ => return Err(GridError::InvalidChar { ch, pos }),
            };
            if v as usize > n {
                return Err(GridError::InvalidChar { ch, pos });
            }
            clues.push(v);
        }
        if clues.len() != n * n {
            return Err(GridError::WrongLength {
                expected: n * n,
                found: clues.len(),
            });
        }
        Self::new(layout, clues)
    }

    pub fn layout(&self) -> &BlockLayout {
        &self.layout
    }

    pub fn n(&self) -> usize {
        self.layout.n()
    }

    pub fn clue(&self, cell: usize) -> Option<u32> {
        match self.clues[cell] {
            0 => None,
            v => Some(v),
        }
    }

    pub fn is_clue(&self, cell: usize) -> bool {
        self.clues[cell] != 0
    }

    pub fn clue_count(&self) -> usize {
        self.clues.iter().filter(|&&v| v != 0).count()
    }

    /// Free cells of each block.
    pub fn free_cells(&self) -> &[Vec<usize>] {
        &self.free
    }

    /// Values each block still needs, ascending.
    pub fn missing_values(&self) -> &[Vec<u32>] {
        &self.missing
    }

    pub fn free_counts(&self) -> Vec<usize> {
        self.free.iter().map(Vec::len).collect()
    }

    /// Renders the puzzle back into the one-character-per-cell format.
    pub fn to_line(&self) -> String {
        self.clues
            .iter()
            .map(|&v| {
                if v == 0 {
                    '.'
                } else {
                    char::from(b'0' + v as u8)
                }
            })
            .collect()
    }

    /// Checks the sudoku state-space invariant: clues in place and every
    /// block a permutation of `1..=n`.
    pub fn check_state(&self, grid: &Grid) -> Result<(), GridError> {
        let n = self.n();
        if grid.n() != n {
            return Err(GridError::WrongLength {
                expected: n * n,
                found: grid.cells().len(),
            });
        }
        for (idx, &clue) in self.clues.iter().enumerate() {
            if clue != 0 && grid.get(idx) != clue {
                return Err(GridError::Binding(format!(
                    "clue cell {idx} holds {} instead of {clue}",
                    grid.get(idx)
                )));
            }
        }
        for (b, cells) in self.layout.blocks().iter().enumerate() {
            let mut seen = vec![false; n + 1];
            for &idx in cells {
                let v = grid.get(idx) as usize;
                if v == 0 || v > n || seen[v] {
                    return Err(GridError::Binding(format!(
                        "block {} is not a permutation of 1..={n}",
                        b + 1
                    )));
                }
                seen[v] = true;
            }
        }
        Ok(())
    }
}

/// Parses a standard 81-character 9x9 sudoku puzzle.
pub fn parse_sudoku(text: &str) -> Result<SudokuPuzzle, GridError> {
    SudokuPuzzle::parse_with_layout(text, BlockLayout::sudoku9())
}

/// What constraints a [`GridState`] is bound to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Binding<'p> {
    Sudoku(&'p SudokuPuzzle),
    Magic,
}

/// A grid that satisfies the state-space invariant of its binding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridState<'p> {
    grid: Grid,
    binding: Binding<'p>,
}

impl<'p> GridState<'p> {
    pub fn sudoku(puzzle: &'p SudokuPuzzle, grid: Grid) -> Result<Self, GridError> {
        puzzle.check_state(&grid)?;
        Ok(Self {
            grid,
            binding: Binding::Sudoku(puzzle),
        })
    }

    pub fn magic(grid: Grid) -> Result<GridState<'static>, GridError> {
        if !grid.is_permutation() {
            return Err(GridError::Binding(format!(
                "cells are not a permutation of 1..={}",
                grid.cells().len()
            )));
        }
        Ok(GridState {
            grid,
            binding: Binding::Magic,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn into_grid(self) -> Grid {
        self.grid
    }

    pub fn binding(&self) -> Binding<'p> {
        self.binding
    }

    /// Checks that exchanging cells `i` and `j` keeps the binding invariant.
    pub fn check_swap(&self, i: usize, j: usize) -> Result<(), GridError> {
        let cells = self.grid.cells().len();
        for index in [i, j] {
            if index >= cells {
                return Err(GridError::OutOfBounds { index, cells });
            }
        }
        if i == j {
            return Err(GridError::SameCell(i));
        }
        if let Binding::Sudoku(p) = self.binding {
            for index in [i, j] {
                if p.is_clue(index) {
                    return Err(GridError::ClueCell { index });
                }
            }
            if p.layout().block_of(i) != p.layout().block_of(j) {
                return Err(GridError::CrossBlock { i, j });
            }
        }
        Ok(())
    }

    /// Exchanges the values at `i` and `j`.
    pub fn apply_swap(&mut self, i: usize, j: usize) -> Result<(), GridError> {
        self.check_swap(i, j)?;
        self.grid.swap_cells(i, j);
        Ok(())
    }

    pub fn serialize(&self) -> String {
        self.grid.to_text()
    }
}

/// Fills every block's free cells with a uniformly random permutation of the
/// values the block is missing. Clue cells are copied unchanged.
pub fn random_fill<'p, R: Rng + ?Sized>(puzzle: &'p SudokuPuzzle, rng: &mut R) -> GridState<'p> {
    let mut cells = puzzle.clues.clone();
    for (free, missing) in puzzle.free.iter().zip(&puzzle.missing) {
        let mut values = missing.clone();
        values.shuffle(rng);
        for (&idx, v) in free.iter().zip(values) {
            cells[idx] = v;
        }
    }
    let grid = Grid::new(puzzle.n(), cells).expect("filled puzzle has n² positive cells");
    GridState {
        grid,
        binding: Binding::Sudoku(puzzle),
    }
}

/// A uniformly random permutation of `1..=n²` laid out as an `n x n` grid.
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> GridState<'static> {
    let mut cells: Vec<u32> = (1..=(n * n) as u32).collect();
    cells.shuffle(rng);
    GridState {
        grid: Grid::new(n, cells).expect("n ≥ 1"),
        binding: Binding::Magic,
    }
}

/// Number of states in the constrained space: the product over blocks of
/// `(free cells)!`, computed exactly.
pub fn count_states(puzzle: &SudokuPuzzle) -> BigUint {
    puzzle.free.iter().map(|f| factorial(f.len())).product()
}

fn factorial(k: usize) -> BigUint {
    (1..=k as u64).map(BigUint::from).product()
}

/// Formats a non-negative integer in scientific notation with `digits`
/// significant digits, rounding half up: `838826730171924480000000` with four
/// digits is `8.388e23`.
pub fn scientific(value: &BigUint, digits: usize) -> String {
    let digits = digits.max(1);
    let text = value.to_str_radix(10);
    let mut exponent = text.len() - 1;
    let mut mantissa: Vec<u8> = text.bytes().map(|b| b - b'0').collect();
    if mantissa.len() > digits {
        let round_up = mantissa[digits] >= 5;
        mantissa.truncate(digits);
        if round_up {
            let mut k = digits;
            loop {
                if k == 0 {
                    mantissa.insert(0, 1);
                    mantissa.truncate(digits);
                    exponent += 1;
                    break;
                }
                k -= 1;
                if mantissa[k] == 9 {
                    mantissa[k] = 0;
                } else {
                    mantissa[k] += 1;
                    break;
                }
            }
        }
    }
    mantissa.resize(digits, 0);
    let mut out = String::new();
    out.push(char::from(b'0' + mantissa[0]));
    if digits > 1 {
        out.push('.');
        out.extend(mantissa[1..].iter().map(|&d| char::from(b'0' + d)));
    }
    out.push_str(&format!("e{exponent}"));
    out
}
