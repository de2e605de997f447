use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("empty (0x0) matrix")]
    Empty,

    #[error("{routine} did not converge after {sweeps} sweeps")]
    NoConvergence { routine: &'static str, sweeps: usize },

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("spectral norm {0} exceeds 1 + 1e-10; rescale before dilating")]
    NormTooLarge(f64),

    #[error("scale {scale} is below the largest singular value {sigma_max}")]
    ScaleTooSmall { scale: f64, sigma_max: f64 },

    #[error("size {n} exceeds the limit {limit} for {what}")]
    SizeLimit { what: &'static str, n: usize, limit: usize },

    #[error("photon count mismatch: input has {input}, outcome has {outcome}")]
    PhotonMismatch { input: usize, outcome: usize },

    #[error("enumeration of {count} outcomes exceeds the budget {budget}")]
    BudgetExceeded { count: u128, budget: u128 },

    #[error("{0}")]
    Domain(String),

    #[error("Vandermonde system is near-singular (condition estimate {0:e})")]
    IllConditioned(f64),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is not a balanced bipartite graph: {0}")]
    NotBipartite(String),

    #[error("permanent is zero; boosting ratio undefined")]
    ZeroPermanent,

    #[error("densest-subgraph block circuit needs {modes} modes for J = {candidates} candidates (budget {budget})")]
    ModeBudget {
        candidates: usize,
        modes: usize,
        budget: usize,
    },

    #[error("matrix has a negative entry at ({row}, {col}); epsilon boosting needs non-negative entries")]
    NegativeEntry { row: usize, col: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
