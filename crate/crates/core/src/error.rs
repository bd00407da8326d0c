use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("word length {0} exceeds the maximum of 24")]
    LengthTooLarge(usize),

    #[error("coordinate {coordinate} out of range for length {length}")]
    CoordinateOutOfRange { coordinate: usize, length: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("line {line}: {message}")]
    ParseLine { line: usize, message: String },

    #[error("dimension {0} exceeds the enumeration budget of 2^24 codewords")]
    EnumerationBudget(usize),

    #[error("{0} is not contained in the enclosing code")]
    NotContained(String),

    #[error("representatives do not generate the code (span has dimension {got}, need {need})")]
    InsufficientReps { got: usize, need: usize },

    #[error("cosets coincide: {0}")]
    CosetCollision(String),

    #[error("need at least two words, got {0}")]
    TooFewWords(usize),

    #[error("graph has {n} vertices, solver limit is {limit}")]
    GraphTooLarge { n: usize, limit: usize },

    #[error("connection set contains the zero element")]
    LoopInConnectionSet,

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("inconsistent dimension: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("thread pool: {0}")]
    Threads(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
