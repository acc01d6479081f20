use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("degree {d} out of range for r = {r} (allowed {min}..={max})")]
    DegreeOutOfRange {
        r: usize,
        d: i64,
        min: i64,
        max: i64,
    },

    #[error("{what} is too large for exact enumeration (dimension {dim}, limit {limit}); use sampled mode")]
    TooLarge {
        what: String,
        dim: usize,
        limit: usize,
    },

    #[error("{what}: estimated {estimate:.3e} operations exceeds the budget of {budget:.1e}; pass --force or --samples")]
    OverBudget {
        what: String,
        estimate: f64,
        budget: f64,
    },

    #[error("influence degree k = {k} must be below {bound}")]
    InfluenceDegree { k: usize, bound: f64 },

    #[error("matrix is singular over F3")]
    SingularMatrix,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("set is not independent: vertices {0} and {1} are adjacent")]
    NotIndependent(String, String),

    #[error("labeling leaves edge ({u}, {v}) unsatisfied")]
    UnsatisfiedEdge { u: String, v: String },

    #[error("norm {norm} exceeds 1")]
    NormViolation { norm: f64 },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
