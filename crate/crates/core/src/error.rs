use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{family} requires n >= {min}, got {n}")]
    DegenerateOrder {
        family: &'static str,
        min: usize,
        n: usize,
    },
    #[error("vertex {index} out of range for n={n}")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("self-pair {0} is not a simple edge")]
    SelfPair(usize),
    #[error("parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("asymmetric at ({row},{col})")]
    Asymmetric { row: usize, col: usize },
    #[error("invalid adjacency entry at ({row},{col}): {value}")]
    InvalidEntry {
        row: usize,
        col: usize,
        value: String,
    },
    #[error(
        "jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("characteristic polynomial needs integer entries, found {value} at ({row},{col})")]
    NonIntegerEntry { row: usize, col: usize, value: f64 },
    #[error("integer overflow in characteristic polynomial recurrence")]
    Overflow,
    #[error("family size p + q must be at least 1")]
    EmptyFamily,
    #[error("i/o error: {0}")]
    Io(String),
    #[error("invalid search config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
