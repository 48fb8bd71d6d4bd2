use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("polynomial is reducible over the base field: {0}")]
    Reducible(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("operation needs a finite field")]
    NotFinite,
    #[error("cannot factor {0} without factor hints")]
    Unfactorable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("bound violated: {0}")]
    BoundViolated(String),
    #[error("dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: u128, cap: usize },
    #[error("invalid group data: {0}")]
    InvalidGroup(String),
    #[error("inconsistent generator images: {0}")]
    Inconsistent(String),
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for errors caused by malformed or unsupported input, as opposed to a
    /// violated mathematical bound.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::BoundViolated(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
