use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid overhead r={r}: need r >= 1 and 2r+1 <= {size}")]
    InvalidOverhead { r: usize, size: usize },

    #[error("{family} expects {expected} dimension(s), got {got}")]
    BadDimensionCount {
        family: &'static str,
        expected: &'static str,
        got: usize,
    },

    #[error("dimension size {size} is too small (minimum 3)")]
    DegenerateSize { size: usize },

    #[error("frequency index {index} out of range for dimension of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("frequency index has {got} components, graph has {expected} dimensions")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("jacobi did not converge after {sweeps} sweeps (off-diagonal norm {residual:e}, tol {tol:e})")]
    NonConvergence {
        sweeps: usize,
        residual: f64,
        tol: f64,
    },

    #[error("graph has {nodes} nodes, dense oracle limit is {limit}")]
    TooLarge { nodes: usize, limit: usize },

    #[error("dimensions {dims:?} mix even and odd sizes; no closed form applies")]
    MixedParity { dims: Vec<usize> },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
