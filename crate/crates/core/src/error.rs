use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("state must have between 1 and {max} qubits, got {got}")]
    QubitCount { got: usize, max: usize },

    #[error("amplitude vector length {0} is not a power of two")]
    InvalidLength(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("qubit index {index} out of range for {n_qubits}-qubit state")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("invalid qubit set: {0}")]
    InvalidQubitSet(String),

    #[error("vector is not normalized (norm^2 = {0})")]
    NotNormalized(f64),

    #[error("operator is not unitary")]
    NotUnitary,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parameters outside the family domain: {0}")]
    OutOfDomain(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(&'static str),

    #[error("formula branch not applicable: {0}")]
    NotApplicable(String),

    #[error("teleportation is infeasible for bob qubit {bob}")]
    Infeasible { bob: usize },

    #[error("every restart hit a degenerate update")]
    AllRestartsDegenerate,

    #[error("empty parameter grid")]
    EmptyGrid,
}

pub type Result<T> = std::result::Result<T, Error>;
