use rand::Rng;

use crate::error::SamplerError;
use crate::grid::SudokuPuzzle;

/// Symmetric swap proposals.
///
/// Both kernels pick an unordered pair of cells uniformly from a fixed pool,
/// so proposing `x -> x'` is exactly as likely as `x' -> x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProposalKernel {
    /// Pick a block uniformly among those with at least two free cells, then
    /// two of its free cells.
    BlockSwap { blocks: Vec<Vec<usize>> },
    /// Pick any two distinct cells out of `cells`.
    FreeSwap { cells: usize },
}

impl ProposalKernel {
    pub fn block_swap(puzzle: &SudokuPuzzle) -> Self {
        let blocks = puzzle
            .free_cells()
            .iter()
            .filter(|f| f.len() >= 2)
            .cloned()
            .collect();
        Self::BlockSwap { blocks }
    }

    pub fn free_swap(n: usize) -> Self {
        Self::FreeSwap { cells: n * n }
    }

    pub fn has_moves(&self) -> bool {
        match self {
            Self::BlockSwap { blocks } => !blocks.is_empty(),
            Self::FreeSwap { cells } => *cells >= 2,
        }
    }

    /// Draws a pair of distinct cells. Consumes one variate for the block
    /// (block-swap only), then two for the pair.
    pub fn propose<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<(usize, usize), SamplerError> {
        match self {
            Self::BlockSwap { blocks } => {
                if blocks.is_empty() {
                    return Err(SamplerError::NoLegalSwap);
                }
                let block = &blocks[rng.random_range(0..blocks.len())];
                let (a, b) = pair(block.len(), rng);
                Ok((block[a], block[b]))
            }
            Self::FreeSwap { cells } => {
                if *cells < 2 {
                    return Err(SamplerError::NoLegalSwap);
                }
                Ok(pair(*cells, rng))
            }
        }
    }
}

/// Uniform ordered pair of distinct indices below `k`, which makes the
/// unordered pair uniform too.
#[inline]
fn pair<R: Rng + ?Sized>(k: usize, rng: &mut R) -> (usize, usize) {
    let a = rng.random_range(0..k);
    let mut b = rng.random_range(0..k - 1);
    if b >= a {
        b += 1;
    }
    (a, b)
}
