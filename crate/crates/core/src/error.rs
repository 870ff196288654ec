use thiserror::Error;

/// Errors raised while building or manipulating grids and puzzles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("expected {expected} cells, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("invalid character {ch:?} at position {pos}")]
    InvalidChar { ch: char, pos: usize },
    #[error("duplicate clue value {value} in block {block}")]
    DuplicateClue { value: u32, block: usize },
    #[error("cell {index} holds {value}, outside [1, {max}]")]
    ValueOutOfRange { index: usize, value: u32, max: u32 },
    #[error("block {block_rows}x{block_cols} does not tile a {n}x{n} grid")]
    BadLayout {
        n: usize,
        block_rows: usize,
        block_cols: usize,
    },
    #[error("block {block} is missing {missing} values but has {free} free cells")]
    Malformed {
        block: usize,
        missing: usize,
        free: usize,
    },
    #[error("cell {index} is out of bounds for {cells} cells")]
    OutOfBounds { index: usize, cells: usize },
    #[error("cell {index} is a clue and cannot move")]
    ClueCell { index: usize },
    #[error("cells {i} and {j} lie in different blocks")]
    CrossBlock { i: usize, j: usize },
    #[error("a swap needs two distinct cells, got {0} twice")]
    SameCell(usize),
    #[error("grid does not satisfy its binding: {0}")]
    Binding(String),
    #[error("malformed grid text, line {line}: {reason}")]
    Syntax { line: usize, reason: String },
}

/// Errors from the energy layer: score evaluation and constraint specs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnergyError {
    #[error("line has {found} values, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("value {value} outside [1, {max}]")]
    ValueOutOfRange { value: u32, max: u32 },
    #[error("spec is for n = {spec}, grid has n = {grid}")]
    SizeMismatch { spec: usize, grid: usize },
    #[error("unknown magic variant {0:?}")]
    UnknownVariant(String),
    #[error("constraint {label:?} is out of bounds for n = {n}")]
    OutOfBounds { label: String, n: usize },
    #[error("constraint {0:?} has no cells")]
    EmptyConstraint(String),
    #[error("block {h}x{w} has no integral target in an {n}x{n} square")]
    NonIntegralTarget { n: usize, h: usize, w: usize },
    #[error("spec file line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// Errors from the Markov chain driver and the enumeration oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SamplerError {
    #[error("no legal swap exists for this state")]
    NoLegalSwap,
    #[error("state space has {0} states, above the enumeration limit")]
    TooLarge(String),
    #[error("invalid chain configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Energy(#[from] EnergyError),
}
