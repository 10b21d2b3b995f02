use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

/// Errors raised by the library. Hypothesis failures during reconstruction are
/// not errors; they are reported through [`crate::reconstruct::FailureReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("matrix has {got} entries, expected {rows}x{cols}")]
    EntryCount {
        rows: usize,
        cols: usize,
        got: usize,
    },
    #[error("dimension mismatch: {left} vs {right} columns")]
    DimensionMismatch { left: usize, right: usize },
    #[error("a rational entry has a denominator divisible by {0}")]
    NotReducible(u64),

    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("edge {0} is not in the graph")]
    UnknownEdge(EdgeId),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("the graph is not connected")]
    Disconnected,
    #[error("the graph is not 2-edge-connected")]
    NotTwoEdgeConnected,
    #[error("edge set {0:?} is not a spanning tree")]
    NotSpanningTree(Vec<EdgeId>),
    #[error("edge map is not a bijection: {0}")]
    NotBijection(String),

    #[error("truncation levels differ ({0} vs {1})")]
    LevelMismatch(u8, u8),
    #[error("unsupported truncation level {0}")]
    UnsupportedLevel(u8),
    #[error("invariant comparison in characteristic 2 is disabled")]
    CharacteristicTwo,

    #[error("edge {edge} must occur exactly once with positive orientation in the walk: {reason}")]
    InadmissibleEdge { edge: EdgeId, reason: &'static str },
    #[error("invalid Whitney twist: {0}")]
    InvalidTwist(String),
    #[error("cannot identify a vertex with itself ({0})")]
    SameVertex(VertexId),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("max_edges = {requested} exceeds the configured cap of {cap}")]
    CapExceeded { requested: usize, cap: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
