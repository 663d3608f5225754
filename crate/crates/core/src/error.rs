use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid modulus {0}: expected an odd prime below 2^31")]
    InvalidPrime(u64),

    #[error("prime {prime} is not admissible: it must exceed {bound}")]
    InadmissiblePrime { prime: u64, bound: u64 },

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("the zero vector is not a projective point")]
    ZeroPoint,

    #[error("point is singular on the model (Jacobian rank {rank}, expected {expected})")]
    SingularPoint { rank: usize, expected: usize },

    #[error("point sampling exhausted after {attempts} attempts")]
    SamplingExhausted { attempts: usize },

    #[error("enumeration budget exceeded: {required} items, budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("operation requires a finite field")]
    InfiniteField,

    #[error("unsupported regime: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io error on {path}: {msg}")]
    Io { path: String, msg: String },
}

impl Error {
    pub(crate) fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        Error::Io { path: path.display().to_string(), msg: err.to_string() }
    }
}
