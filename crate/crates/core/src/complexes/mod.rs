//! Triangulations given by face-gluing manifests.

mod census;
mod homology;
mod manifest;
mod perm;
mod triangulation;

pub use census::{builtin, builtin_names, BuiltinInfo, BUILTINS};
pub use homology::{gf2_rank, BettiNumbers};
pub use manifest::{GluingRecord, Manifest, Metadata};
pub use perm::Perm4;
pub use triangulation::{EdgeClass, EdgeSlot, Gluing, Triangulation, VertexClass, VertexKind};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComplexError {
    #[error("manifest parse error: {0}")]
    Parse(String),

    #[error("tet_count must be positive")]
    NoTetrahedra,

    #[error("index out of range: {what} {index} (limit {limit})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },

    #[error("malformed permutation at tet {tet} face {face}: {detail}")]
    MalformedPermutation {
        tet: usize,
        face: usize,
        detail: String,
    },

    #[error("face glued to itself: tet {tet} face {face}")]
    SelfGluedFace { tet: usize, face: usize },

    #[error("face glued more than once: tet {tet} face {face}")]
    DuplicateGluing { tet: usize, face: usize },

    #[error("non-involutive gluing: reverse of tet {tet} face {face} does not invert it")]
    NonInvolutive { tet: usize, face: usize },

    #[error("unpaired face: tet {tet} face {face}")]
    UnpairedFace { tet: usize, face: usize },

    #[error("invalid edge: edge slot a{} of tet {tet} is identified with itself reversed", slot + 1)]
    InvalidEdge { tet: usize, slot: usize },

    #[error("vertex {vertex} link is not orientable")]
    NonOrientableLink { vertex: usize },

    #[error("vertex {vertex} link has Euler characteristic {chi} (expected 2 or 0)")]
    BadLinkEuler { vertex: usize, chi: i64 },

    #[error("triangulation is not orientable")]
    NonOrientable,

    #[error("metadata required: {0}")]
    MetadataRequired(String),

    #[error("unknown builtin '{0}'")]
    UnknownBuiltin(String),

    #[error("builtin '{name}' failed validation: {detail}")]
    CensusValidation { name: String, detail: String },
}
