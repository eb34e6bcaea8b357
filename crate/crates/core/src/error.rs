use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("lattice mismatch: rank {left} vs rank {right}")]
    LatticeMismatch { left: usize, right: usize },

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("class vector has length {got}, lattice rank is {expected}")]
    RankMismatch { expected: usize, got: usize },

    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("invalid knot: {0}")]
    InvalidKnot(String),

    #[error("inconsistent manifold record: {0}")]
    InconsistentRecord(String),

    #[error("unknown surface label `{label}` in {manifold}")]
    UnknownSurface { label: String, manifold: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("insufficient Seiberg-Witten data: {0}")]
    InsufficientSw(String),

    #[error("unbounded adjunction region: {0}")]
    Unbounded(String),

    #[error("enumeration box too large: {0} lattice points")]
    TooLarge(u128),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("at {path}: {source}")]
    AtPath {
        path: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn at(self, path: impl Into<String>) -> Error {
        match self {
            // keep the innermost path, it is the most specific
            e @ Error::AtPath { .. } => e,
            e => Error::AtPath { path: path.into(), source: Box::new(e) },
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
