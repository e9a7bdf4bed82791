use thiserror::Error;

use crate::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("{file} row {row}: malformed row: {reason}")]
    MalformedRow {
        file: &'static str,
        row: usize,
        reason: String,
    },

    #[error("edges row {row}: unknown endpoint {id}")]
    UnknownEndpoint { row: usize, id: VertexId },

    #[error("edges row {row}: nonpositive length {length}")]
    NonPositiveLength { row: usize, length: f64 },

    #[error("edges row {row}: self-loop at vertex {id}")]
    SelfLoop { row: usize, id: VertexId },

    #[error("edges row {row}: duplicate edge ({u}, {v}) with conflicting lengths {first} and {second}")]
    ConflictingDuplicateEdge {
        row: usize,
        u: VertexId,
        v: VertexId,
        first: f64,
        second: f64,
    },

    #[error("nodes row {row}: duplicate vertex id {id}")]
    DuplicateVertex { row: usize, id: VertexId },

    #[error("unknown vertex id {0}")]
    UnknownVertex(VertexId),

    #[error("invalid threshold {0} (must be finite and within range)")]
    InvalidThreshold(f64),

    #[error("graph has isolated vertices: {0:?}")]
    IsolatedVertices(Vec<VertexId>),

    #[error("invalid multiplicity k = {0}")]
    InvalidK(usize),

    #[error("alpha = {0} outside (0, 1]")]
    AlphaOutOfRange(f64),

    #[error("effective degree {delta} is smaller than k = {k}")]
    DegreeBelowK { delta: f64, k: usize },

    #[error("{} vertices have degree below k = {k} (first: {:?}); choose an outlier policy", .outliers.len(), .outliers.first())]
    Outliers { k: usize, outliers: Vec<VertexId> },

    #[error("degree sequence contains a zero degree")]
    ZeroDegree,

    #[error("degree sequence is empty")]
    EmptyDegreeSequence,

    #[error("set is not {k}-dominating: {violations} undercovered vertices")]
    NotDominating { k: usize, violations: usize },

    #[error("exact search limited to {limit} vertices, graph has {n}")]
    GraphTooLarge { n: usize, limit: usize },

    #[error("no {k}-dominating set of size at most {size_limit}")]
    NoSetWithinLimit { k: usize, size_limit: usize },

    #[error("runs must be at least 1")]
    ZeroRuns,

    #[error("station set is empty")]
    EmptyStationSet,

    #[error("every vertex is a station; no vertices to evaluate")]
    NoNonStationVertices,

    #[error("distances must be sorted ascending and nonnegative")]
    UnsortedDistances,

    #[error("requested {requested} distinct pairs but the graph only has {available}")]
    TooFewPairs { requested: usize, available: usize },

    #[error("cache: {0}")]
    Cache(String),

    #[error("fingerprint mismatch: expected {expected}, found {found}")]
    FingerprintMismatch { expected: String, found: String },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
