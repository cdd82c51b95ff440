use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("length mismatch: expected {expected} qubits, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    IndexOutOfRange { index: usize, n_qubits: usize },

    #[error("number of qubits must be positive")]
    ZeroQubits,

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("cannot measure the identity observable")]
    IdentityObservable,

    #[error("observable is not Hermitian (phase i^{0})")]
    NonHermitian(u8),

    #[error("dense simulation of {requested} qubits exceeds the cap of {cap}")]
    DenseCapExceeded { requested: usize, cap: usize },

    #[error("invalid Pauli label {0:?}")]
    PauliParse(String),

    #[error("preparation is not a stabilizer operation: {0}")]
    NonStabilizerPrep(String),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("parity checks are not orthogonal: hx row {hx_row} overlaps hz row {hz_row} oddly")]
    NonOrthogonalChecks { hx_row: usize, hz_row: usize },

    #[error("code encodes {0} logical qubits, exactly 1 is supported")]
    UnsupportedLogicalCount(usize),

    #[error("target qubit {0} is not in |0>")]
    NonFreshQubit(usize),

    #[error("syndrome {0} is not in the decode table")]
    Uncorrectable(String),

    #[error("block is not in the codespace (syndrome {0})")]
    NotInCodespace(String),

    #[error("{what} needs n <= {max}, got {n}")]
    TooLarge { what: &'static str, n: usize, max: usize },

    #[error("access violation: {0}")]
    AccessViolation(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("serialization: {0}")]
    Serialization(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
