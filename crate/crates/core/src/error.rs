//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime at most 251")]
    InvalidField(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("relations are not admissible: {0}")]
    NotAdmissible(String),
    #[error("algebra appears infinite-dimensional: no power of the arrow ideal found in the relations up to depth {0}")]
    InfiniteDimensional(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("objects do not match: {0}")]
    Mismatch(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid morphism: {0}")]
    InvalidMap(String),
    #[error("invalid conflation: {0}")]
    InvalidConflation(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for malformed or unreadable input, as opposed to failed computations.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Schema(_)
                | Error::Io { .. }
                | Error::InvalidField(_)
                | Error::InvalidAlgebra(_)
                | Error::NotAdmissible(_)
                | Error::InfiniteDimensional(_)
                | Error::InvalidModule(_)
                | Error::InvalidMap(_)
                | Error::InvalidConflation(_)
                | Error::InvalidComplex(_)
                | Error::DimensionMismatch(_)
                | Error::Mismatch(_)
        )
    }
}
