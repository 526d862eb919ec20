use thiserror::Error;

use crate::separation::Separation;
use crate::vertex_set::VertexSet;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph has {vertices} vertices, above the configured cap of {cap}")]
    CapExceeded { vertices: usize, cap: usize },

    #[error("({a}, {b}) is not a separation: {reason}")]
    NotASeparation {
        a: VertexSet,
        b: VertexSet,
        reason: &'static str,
    },

    #[error("cross-diagram undefined for (V,V)")]
    DegenerateSeparation,

    #[error("separations {0} and {1} cross")]
    Crossing(Separation, Separation),

    #[error("separation {0} is improper")]
    Improper(Separation),

    #[error("system is not closed under inverses: {0} lacks its inverse")]
    NotSymmetric(Separation),

    #[error("{0} is not a block: {1}")]
    NotABlock(VertexSet, String),

    #[error("profile axiom failure: {0}")]
    Profile(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid tree-decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("not almost nested; bad focusing sequence {0:?}")]
    NotAlmostNested(Vec<VertexSet>),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A guarantee that the construction is supposed to establish did not
    /// hold. Carries the stage and a rendering of the witness.
    #[error("internal guarantee violated in {stage}: {witness}")]
    Violation { stage: &'static str, witness: String },

    #[error("canonical search exhausted: {0}")]
    SearchExhausted(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn violation(stage: &'static str, witness: impl Into<String>) -> Self {
        Error::Violation {
            stage,
            witness: witness.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Violation { .. } | Error::SearchExhausted(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
