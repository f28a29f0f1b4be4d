use thiserror::Error;

/// Errors raised by lattice, solver, search and census operations.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid argument values (probabilities out of range, degenerate windows, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A bond or trail left the finite lattice window.
    #[error("out of window: {0}")]
    OutOfWindow(String),

    /// A configurable capacity cap was exceeded.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A spin configuration does not cover the requested domain, or the
    /// domain does not fit the system window.
    #[error("domain error: {0}")]
    Domain(String),

    /// Component has an odd-order vertex or is disconnected.
    #[error("not Eulerian: {0}")]
    NotEulerian(String),

    /// Curve passed to the two-coloring is not a union of closed components.
    #[error("coloring error: {0}")]
    Coloring(String),

    /// Endpoint mismatch or segment reuse when concatenating trails.
    #[error("concatenation error: {0}")]
    Concat(String),

    /// A stated precondition does not hold for the given inputs.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
