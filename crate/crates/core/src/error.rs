use thiserror::Error;

/// Errors raised by the construction, counting and spectral routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("integer overflow computing {0}")]
    Overflow(String),

    #[error("count {0} exceeds 2^53 and cannot be converted to f64 without loss")]
    FloatLoss(u128),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("vertex {index} out of range 1..={n}")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("invalid edge: {0}")]
    InvalidEdge(String),

    #[error("disconnected: closed-form spectrum requires b_n=1")]
    Disconnected,

    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded { what: &'static str, needed: u128, cap: u128 },

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),

    #[error("quotient partition is not equitable: block ({0}, {1}) has non-constant row sums")]
    NotEquitable(usize, usize),

    #[error("block {block}: formula gives {formula}, pair count a_(s,s+1) is {pair}")]
    RouteMismatch { block: usize, formula: u128, pair: u128 },

    #[error("{0}")]
    Family(String),
}

pub type Result<T> = std::result::Result<T, Error>;
