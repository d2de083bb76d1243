use thiserror::Error;

use crate::complexes::ComplexError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("level must be odd ≥ {min}, got {got}")]
    InvalidLevel { got: i64, min: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("face F{face} inadmissible")]
    InadmissibleFace { face: usize },

    #[error("internal consistency: {0}")]
    Consistency(String),

    #[error(transparent)]
    Complex(#[from] ComplexError),

    #[error("Betti data required: {0}")]
    MissingBettiData(String),

    #[error("mixed levels: {0:?}")]
    MixedLevels(Vec<u32>),

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("scan at r={r} exceeds cap {cap} (~{estimate:.3e} tuples)")]
    ScanCapExceeded { r: u32, cap: u32, estimate: f64 },
}

impl Error {
    /// Whether the error stems from bad caller input (as opposed to a broken
    /// internal invariant).
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Consistency(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
