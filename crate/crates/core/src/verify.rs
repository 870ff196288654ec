//! Constraint-by-constraint checks of a finished grid, independent of the
//! sampler.

use std::fmt;

use crate::energy::MagicSpec;
use crate::error::EnergyError;
use crate::grid::{BlockLayout, Grid, SudokuPuzzle};

/// One checked constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    /// Achieved value: the cell sum for magic constraints, the sorted
    /// deviation score for sudoku units.
    pub achieved: i64,
    pub target: i64,
}

impl Check {
    pub fn residual(&self) -> i64 {
        self.achieved - self.target
    }

    pub fn ok(&self) -> bool {
        self.residual() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    /// Problems that are not a single residual, such as a value outside the
    /// allowed range or a moved clue.
    pub issues: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.issues.is_empty() && self.checks.iter().all(Check::ok)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.ok()).count()
    }

    /// Checks whose label starts with `prefix`.
    pub fn group<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Check> + 'a {
        self.checks
            .iter()
            .filter(move |c| c.label.starts_with(prefix))
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<20} {:>10} {:>10} {:>10}",
            "constraint", "achieved", "target", "residual"
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "{:<20} {:>10} {:>10} {:>10}",
                c.label,
                c.achieved,
                c.target,
                c.residual()
            )?;
        }
        for issue in &self.issues {
            writeln!(f, "issue: {issue}")?;
        }
        writeln!(
            f,
            "{}: {} of {} constraints met",
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len() - self.failures(),
            self.checks.len()
        )
    }
}

/// Sums every constraint of `spec` over `grid` and checks that the grid is a
/// permutation of `1..=n²`.
pub fn verify_magic(grid: &Grid, spec: &MagicSpec) -> Result<VerifyReport, EnergyError> {
    if grid.n() != spec.n() {
        return Err(EnergyError::SizeMismatch {
            spec: spec.n(),
            grid: grid.n(),
        });
    }
    let mut issues = Vec::new();
    if !grid.is_permutation() {
        issues.push(format!(
            "cells are not a permutation of 1..={}",
            grid.cells().len()
        ));
    }
    let checks = spec
        .constraints()
        .iter()
        .map(|c| Check {
            label: c.label.clone(),
            achieved: c.sum(grid),
            target: c.target,
        })
        .collect();
    Ok(VerifyReport { checks, issues })
}

/// Scores every row, column and block of a sudoku grid; each unit passes
/// exactly when it holds `1..=n`. With a puzzle, clue cells are checked too.
pub fn verify_sudoku(
    grid: &Grid,
    layout: &BlockLayout,
    puzzle: Option<&SudokuPuzzle>,
) -> Result<VerifyReport, EnergyError> {
    let n = layout.n();
    if grid.n() != n {
        return Err(EnergyError::SizeMismatch {
            spec: n,
            grid: grid.n(),
        });
    }
    let mut issues = Vec::new();
    if let Some(&value) = grid.cells().iter().find(|&&v| v == 0 || v as usize > n) {
        return Err(EnergyError::ValueOutOfRange {
            value,
            max: n as u32,
        });
    }
    let unit = |label: String, values: Vec<u32>| Check {
        label,
        achieved: unit_score(n, values) as i64,
        target: 0,
    };
    let mut checks = Vec::with_capacity(3 * n);
    for r in 0..n {
        checks.push(unit(format!("row {}", r + 1), grid.row(r).to_vec()));
    }
    for c in 0..n {
        checks.push(unit(format!("col {}", c + 1), grid.column(c)));
    }
    for (b, cells) in layout.blocks().iter().enumerate() {
        checks.push(unit(
            format!("block {}", b + 1),
            cells.iter().map(|&i| grid.get(i)).collect(),
        ));
    }
    if let Some(p) = puzzle {
        for idx in 0..n * n {
            if let Some(clue) = p.clue(idx) {
                if grid.get(idx) != clue {
                    issues.push(format!(
                        "clue at row {} col {} is {clue}, grid has {}",
                        idx / n + 1,
                        idx % n + 1,
                        grid.get(idx)
                    ));
                }
            }
        }
    }
    Ok(VerifyReport { checks, issues })
}

/// Sorted-deviation score, written out directly rather than through the
/// energy module's histogram kernel.
fn unit_score(n: usize, mut values: Vec<u32>) -> u64 {
    debug_assert_eq!(values.len(), n);
    values.sort_unstable();
    values
        .iter()
        .zip(1..)
        .map(|(&v, j): (&u32, i64)| (v as i64 - j).unsigned_abs())
        .sum()
}
