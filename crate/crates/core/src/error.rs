use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parts {0:?} do not form a partition (must be weakly decreasing and positive)")]
    NotAPartition(Vec<usize>),

    #[error("row {row} has {found} entries, shape requires {expected}")]
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("cell ({row},{col}) lies outside the diagram and is not a sentinel position")]
    OutOfShape { row: usize, col: usize },

    #[error("entry {0} is not a positive integer")]
    NonPositiveEntry(String),

    #[error("empty input")]
    EmptyInput,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("operation requires an unpadded filling (zero entries present)")]
    Padded,

    #[error("column {col} is not compatible with the shape (heights {left} and {right})")]
    NotCompatible {
        col: usize,
        left: usize,
        right: usize,
    },

    #[error("row {row} out of range 1..={height}")]
    RowOutOfRange { row: usize, height: usize },

    #[error("shape {0:?} is not a rectangle")]
    NotRectangular(Vec<usize>),

    #[error("enumeration of {needed} fillings exceeds the budget of {budget}")]
    Budget { needed: u128, budget: u128 },

    #[error("trace replay diverged at step {step} ({operator})")]
    ReplayMismatch { step: usize, operator: String },

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
