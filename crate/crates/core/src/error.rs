use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    /// Malformed input: shape errors, schema violations, invalid modes.
    #[error("invalid input: {0}")]
    Schema(String),

    /// A real isotypic factor with endomorphism algebra of dimension 4.
    /// Such factors cannot occur for cyclic groups and are outside the
    /// supported theory.
    #[error("quaternionic factor rejected: {0}")]
    Quaternionic(String),

    /// The requested computation exceeds the documented feasibility bounds.
    #[error("computation infeasible at this size: {0}")]
    Infeasible(String),

    /// An internal mathematical invariant failed (d∘d != 0, Jacobi, ...).
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;

impl CoreError {
    /// Process exit code used by the command line interface.
    pub fn exit_code(&self) -> i32 {
        match self {
            CoreError::Schema(_) => 2,
            CoreError::Quaternionic(_) => 3,
            CoreError::Infeasible(_) => 4,
            CoreError::Invariant(_) => 1,
        }
    }
}
