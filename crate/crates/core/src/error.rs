use thiserror::Error;

/// Errors raised by the transport library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("trace is {0}, expected 1")]
    InvalidTrace(f64),

    #[error("observable set is empty")]
    EmptyObservableSet,

    #[error("rank {rank} is out of range for dimension {dim}")]
    InvalidRank { rank: usize, dim: usize },

    #[error("neither state is pure (largest eigenvalues {0} and {1})")]
    NeitherPure(f64, f64),

    #[error("expected a qubit state (dimension 2), found dimension {0}")]
    WrongDimension(usize),

    #[error("Bloch vector lies outside the unit ball (norm {0})")]
    OutsideBall(f64),

    #[error("observable {index} is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    ObservableNotPsd { index: usize, min_eigenvalue: f64 },

    #[error("channel is not trace preserving (deviation {0:e})")]
    NotTracePreserving(f64),

    #[error("solver failure: {0}")]
    SolverFailure(String),

    #[error("squared divergence {0:e} is below the concavity tolerance")]
    ConcavityViolation(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Wraps the error with a location such as a lattice point or sample index.
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// Returns the innermost error, skipping any context wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Context { source, .. } => source.root(),
            other => other,
        }
    }

    /// True for failures of the numerical solver, as opposed to invalid input.
    pub fn is_solver_failure(&self) -> bool {
        matches!(
            self.root(),
            Error::SolverFailure(_) | Error::ConcavityViolation(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
