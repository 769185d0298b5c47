use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("rank {0} exceeds the supported maximum of {max}", max = crate::exterior::MAX_RANK)]
    RankTooLarge(usize),

    #[error("n = {n} exceeds the enumeration cap {cap}")]
    EnumerationCap { n: usize, cap: usize },

    #[error("bidegree ({i}, {j}) out of range for rank {n}")]
    BidegreeOutOfRange { i: usize, j: usize, n: usize },

    #[error("incidence ranks must satisfy r <= s <= n, got r={r}, s={s}, n={n}")]
    OrderingViolation { r: usize, s: usize, n: usize },

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("column order is not a permutation of 0..{0}")]
    InvalidPermutation(usize),

    #[error("partitions of different sizes: {0:?}")]
    PartitionSizeMismatch(Vec<usize>),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),
}
