use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside its documented range.
    #[error("domain error: {0}")]
    Domain(String),

    /// A machine fails a structural requirement (empty sets, bad indices,
    /// rows that do not sum to one, a reducible state chain).
    #[error("structural error: {0}")]
    Structural(String),

    /// Power iteration did not reach the residual tolerance.
    #[error("stationary iteration did not converge after {iterations} iterations (residual {residual:.3e})")]
    Convergence { iterations: u64, residual: f64 },

    /// An operation was applied to a box in an incompatible configuration.
    #[error("state error: {0}")]
    State(String),

    /// A capped loop exceeded its iteration budget.
    #[error("protocol did not terminate within {cap} iterations")]
    NonTermination { cap: u64 },

    /// A machine-definition file could not be read or parsed.
    #[error("machine file error: {0}")]
    MachineFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
