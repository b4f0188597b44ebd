use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a supported prime modulus")]
    InvalidPrime(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error at position {pos} in {input:?}: {msg}")]
    Parse { input: String, pos: usize, msg: String },

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("modules live over different rings ({0} vs {1})")]
    RingMismatch(String, String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("map does not intertwine action {0}")]
    NotIntertwining(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),

    #[error("extension source mismatch: {0}")]
    SourceMismatch(String),

    #[error("maps {0} and {1} are not composable")]
    NonComposable(usize, usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
