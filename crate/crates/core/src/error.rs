use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("register of {0} qubits exceeds the supported maximum of {max}", max = crate::linalg::MAX_QUBITS)]
    TooManyQubits(usize),

    #[error("invalid register labels: {0}")]
    InvalidLabels(String),

    #[error("invalid keep set: {0}")]
    InvalidKeepSet(String),

    #[error("matrix is not Hermitian (relative deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("{what} = {value} is outside its domain")]
    OutOfDomain { what: &'static str, value: f64 },

    #[error("invalid bipartition: {0}")]
    InvalidCut(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid bound: {0}")]
    InvalidBound(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}
