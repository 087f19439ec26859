use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("{what}: limit {limit} exceeded{}", layer.map(|l| format!(" at layer N = {l}")).unwrap_or_default())]
    Size {
        what: String,
        limit: u64,
        layer: Option<usize>,
    },

    #[error("deck set is not in standard form: {0}")]
    Normalization(String),

    #[error("cyclic reduction needs equal sizes, got {0:?}")]
    UnsupportedSymmetry(Vec<u32>),

    #[error("truncation degree {have} cannot resolve a moment of total order {need}")]
    Precision { need: u32, have: u32 },

    #[error("degree bound {bound} too small for moment {order:?}: fit disagrees at n = {n}")]
    DegreeBound { order: [u32; 3], bound: u32, n: u32 },

    #[error("{0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}
