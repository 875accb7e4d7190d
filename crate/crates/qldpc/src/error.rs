use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid row {row}: {reason}")]
    InvalidRow { row: usize, reason: String },

    #[error("column index {col} out of range for {n_cols} columns")]
    ColumnOutOfRange { col: usize, n_cols: usize },

    #[error("stabilizer rows {first} and {second} anticommute")]
    NonCommutingStabilizers { first: usize, second: usize },

    #[error("stabilizer lengths differ: row 0 acts on {expected} qubits, row {row} on {got}")]
    MixedStabilizerLength { expected: usize, row: usize, got: usize },

    #[error("matrix is not self-orthogonal: rows {first} and {second} overlap oddly")]
    NotSelfOrthogonal { first: usize, second: usize },

    #[error("parity-check matrix has rank {rank}, expected full row rank {rows}; delete dependent rows first")]
    RankDeficient { rank: usize, rows: usize },

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("search budget of {budget} attempts exhausted after {attempts} tries")]
    BudgetExhausted { budget: usize, attempts: usize },

    #[error("invalid channel parameter: {0}")]
    InvalidChannel(String),

    #[error("curve `{name}` is undefined at {value}")]
    CurveDomain { name: String, value: f64 },

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
