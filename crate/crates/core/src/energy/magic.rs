use std::fmt;
use std::str::FromStr;

use crate::error::EnergyError;
use crate::grid::Grid;

use super::EnergyModel;

/// The common line sum of a normal `n x n` magic square, `n(n²+1)/2`.
pub fn magic_constant(n: usize) -> u64 {
    let n = n as u64;
    n * (n * n + 1) / 2
}

/// One sum constraint: the listed cells must add up to `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub label: String,
    pub cells: Vec<usize>,
    pub target: i64,
}

impl Constraint {
    pub fn sum(&self, grid: &Grid) -> i64 {
        self.cells.iter().map(|&c| grid.get(c) as i64).sum()
    }

    pub fn residual(&self, grid: &Grid) -> i64 {
        self.sum(grid) - self.target
    }
}

/// A magic-square target: side length and a list of sum constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagicSpec {
    n: usize,
    constraints: Vec<Constraint>,
    /// Sorted constraint indices touching each cell.
    by_cell: Vec<Vec<usize>>,
}

impl MagicSpec {
    pub fn new(n: usize, constraints: Vec<Constraint>) -> Result<Self, EnergyError> {
        let mut by_cell = vec![Vec::new(); n * n];
        for (k, c) in constraints.iter().enumerate() {
            if c.cells.is_empty() {
                return Err(EnergyError::EmptyConstraint(c.label.clone()));
            }
            let mut seen = c.cells.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != c.cells.len() || seen.last().is_some_and(|&m| m >= n * n) {
                return Err(EnergyError::OutOfBounds {
                    label: c.label.clone(),
                    n,
                });
            }
            for &cell in &c.cells {
                by_cell[cell].push(k);
            }
        }
        Ok(Self {
            n,
            constraints,
            by_cell,
        })
    }

    /// Rows, columns and both diagonals, each targeting the magic constant.
    pub fn lines(n: usize) -> Vec<Constraint> {
        let m = magic_constant(n) as i64;
        let mut out = Vec::with_capacity(2 * n + 2);
        for r in 0..n {
            out.push(Constraint {
                label: format!("row {}", r + 1),
                cells: (0..n).map(|c| r * n + c).collect(),
                target: m,
            });
        }
        for c in 0..n {
            out.push(Constraint {
                label: format!("col {}", c + 1),
                cells: (0..n).map(|r| r * n + c).collect(),
                target: m,
            });
        }
        out.push(Constraint {
            label: "diag main".into(),
            cells: (0..n).map(|k| k * n + k).collect(),
            target: m,
        });
        out.push(Constraint {
            label: "diag anti".into(),
            cells: (0..n).map(|k| k * n + (n - 1 - k)).collect(),
            target: m,
        });
        out
    }

    /// A rectangular block anchored at 1-indexed `(row, col)` whose target
    /// is its share of the total, `(h·w / n)·m`.
    pub fn block(
        n: usize,
        row: usize,
        col: usize,
        h: usize,
        w: usize,
    ) -> Result<Constraint, EnergyError> {
        let label = format!("block {row} {col} {h} {w}");
        if row == 0 || col == 0 || h == 0 || w == 0 || row - 1 + h > n || col - 1 + w > n {
            return Err(EnergyError::OutOfBounds { label, n });
        }
        let scaled = (h * w) as u64 * magic_constant(n);
        if scaled % n as u64 != 0 {
            return Err(EnergyError::NonIntegralTarget { n, h, w });
        }
        Ok(Constraint {
            cells: block_cells(n, row - 1, col - 1, h, w),
            label,
            target: (scaled / n as u64) as i64,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn constraints_of(&self, cell: usize) -> &[usize] {
        &self.by_cell[cell]
    }
}

pub(crate) fn block_cells(n: usize, r0: usize, c0: usize, h: usize, w: usize) -> Vec<usize> {
    (r0..r0 + h)
        .flat_map(|r| (c0..c0 + w).map(move |c| r * n + c))
        .collect()
}

/// Named constraint sets, plus custom block placements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MagicVariant {
    /// 8x8: rows, columns, diagonals at 260 and the centred 4x4 block at 520.
    Classic8,
    /// `Classic8` plus the four corner 4x4 quadrants at 520.
    FiveBlock8,
    /// 10x10: rows, columns, diagonals and the ten 2x5 tiles, all at 505.
    TenBlock10,
    /// Rows, columns and diagonals of an `n x n` square plus `h x w` blocks
    /// at the given 1-indexed anchors.
    Custom {
        n: usize,
        block_rows: usize,
        block_cols: usize,
        anchors: Vec<(usize, usize)>,
    },
}

impl FromStr for MagicVariant {
    type Err = EnergyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "classic-8" => Ok(Self::Classic8),
            "five-block-8" => Ok(Self::FiveBlock8),
            "ten-block-10" => Ok(Self::TenBlock10),
            other => Err(EnergyError::UnknownVariant(other.to_string())),
        }
    }
}

impl fmt::Display for MagicVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Classic8 => f.write_str("classic-8"),
            Self::FiveBlock8 => f.write_str("five-block-8"),
            Self::TenBlock10 => f.write_str("ten-block-10"),
            Self::Custom { n, .. } => write!(f, "custom-{n}"),
        }
    }
}

pub fn build_magic_spec(variant: &MagicVariant) -> Result<MagicSpec, EnergyError> {
    let (n, h, w, anchors): (usize, usize, usize, Vec<(usize, usize)>) = match variant {
        MagicVariant::Classic8 => (8, 4, 4, vec![(3, 3)]),
        MagicVariant::FiveBlock8 => (8, 4, 4, vec![(3, 3), (1, 1), (1, 5), (5, 1), (5, 5)]),
        MagicVariant::TenBlock10 => (
            10,
            2,
            5,
            (0..5)
                .flat_map(|band| [(2 * band + 1, 1), (2 * band + 1, 6)])
                .collect(),
        ),
        MagicVariant::Custom {
            n,
            block_rows,
            block_cols,
            anchors,
        } => (*n, *block_rows, *block_cols, anchors.clone()),
    };
    if n == 0 {
        return Err(EnergyError::OutOfBounds {
            label: "n".into(),
            n,
        });
    }
    let mut constraints = MagicSpec::lines(n);
    for (r, c) in anchors {
        constraints.push(MagicSpec::block(n, r, c, h, w)?);
    }
    MagicSpec::new(n, constraints)
}

/// `Σ |sum - target|` over every constraint of `spec`.
pub fn magic_energy(grid: &Grid, spec: &MagicSpec) -> Result<u64, EnergyError> {
    if grid.n() != spec.n {
        return Err(EnergyError::SizeMismatch {
            spec: spec.n,
            grid: grid.n(),
        });
    }
    Ok(spec.full_energy(grid))
}

impl EnergyModel for MagicSpec {
    fn full_energy(&self, grid: &Grid) -> u64 {
        self.constraints
            .iter()
            .map(|c| c.residual(grid).unsigned_abs())
            .sum()
    }

    /// Only constraints holding exactly one of the two cells change; their
    /// sums shift by `±(b - a)`.
    fn delta_energy(&self, grid: &Grid, i: usize, j: usize) -> i64 {
        let (a, b) = (grid.get(i) as i64, grid.get(j) as i64);
        if a == b {
            return 0;
        }
        let shift = b - a;
        let (ci, cj) = (&self.by_cell[i], &self.by_cell[j]);
        let term = |k: usize, d: i64| {
            let r = self.constraints[k].residual(grid);
            (r + d).abs() - r.abs()
        };
        let mut delta = 0;
        let (mut x, mut y) = (0, 0);
        while x < ci.len() || y < cj.len() {
            match (ci.get(x), cj.get(y)) {
                (Some(&p), Some(&q)) if p == q => {
                    x += 1;
                    y += 1;
                }
                (Some(&p), Some(&q)) if p < q => {
                    delta += term(p, shift);
                    x += 1;
                }
                (Some(&p), None) => {
                    delta += term(p, shift);
                    x += 1;
                }
                (_, Some(&q)) => {
                    delta += term(q, -shift);
                    y += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        delta
    }
}
