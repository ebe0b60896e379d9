use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count {requested} outside supported range 1..={max}")]
    Capacity { requested: usize, max: usize },

    #[error("qubit index {index} out of range for a {n_qubits}-qubit state")]
    QubitIndex { index: usize, n_qubits: usize },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("non-finite angle for {0} gate")]
    NonFiniteAngle(&'static str),

    #[error("unknown encoder {name:?}; expected one of: {}", legal.join(", "))]
    UnknownEncoder { name: String, legal: Vec<&'static str> },

    #[error("unknown ansatz {name:?}; expected one of: {}", legal.join(", "))]
    UnknownAnsatz { name: String, legal: Vec<&'static str> },

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("{what}: expected length {expected}, got {got}")]
    Arity { what: &'static str, expected: usize, got: usize },

    #[error("feature {feature} = {value} outside the encoder domain [-1, 1]")]
    Domain { feature: usize, value: f64 },

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("empty input")]
    EmptyInput,

    #[error("target values have zero variance; R^2 is undefined")]
    DegenerateTarget,

    #[error("linear system is singular; use a regularization strength > 0")]
    Singular,

    #[error("non-finite loss at iteration {iteration}")]
    NonFiniteLoss { iteration: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error at row {row}, column {column:?}: {message}")]
    Parse { row: usize, column: String, message: String },

    #[error("{0}")]
    Data(String),

    #[error("trainable slot {param} sits on a {kind} gate, which has no shift rule")]
    NoShiftRule { param: usize, kind: &'static str },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
