use thiserror::Error;

/// Errors produced by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A graph would exceed the 62-vertex limit.
    #[error("capacity exceeded: {requested} vertices requested, at most {max} supported")]
    Capacity { requested: usize, max: usize },

    /// An argument violated an operation's precondition.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Malformed graph6, edge-list JSON or pattern grammar.
    #[error("format error: {0}")]
    Format(String),

    /// An exact algorithm was asked to run past its size cap.
    #[error("capability exceeded: {0}")]
    Capability(String),

    /// Search configuration outside the guard rails.
    #[error("configuration error: {0}")]
    Config(String),

    /// An iterative method stopped before reaching its tolerance.
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NonConvergence {
        iterations: usize,
        residual: f64,
        iterate: Vec<f64>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
