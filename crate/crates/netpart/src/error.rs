//! Error types shared across the crate.

use thiserror::Error;

use crate::graph::NodeId;

/// What went wrong while reading an edge-list line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("segment connects node {node} to itself")]
    SelfLoop { node: NodeId },
    #[error("expected two node indices, found {found} token(s)")]
    TokenCount { found: usize },
    #[error("invalid node index {token:?}")]
    InvalidInteger { token: String },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    #[error("network has no segments")]
    EmptyNetwork,

    #[error("node index {0} is outside the index mapping domain")]
    MappingDomain(NodeId),

    #[error("operation requires dense node indices 0..N-1; compact the network first")]
    NotDense,

    #[error("adjacency map has no nodes")]
    EmptyAdjacency,

    #[error("origin node {origin} out of range for {nodes} nodes")]
    OriginOutOfRange { origin: NodeId, nodes: usize },

    #[error("triangular pair inspection refused: {nodes} nodes exceeds the {limit}-node guard")]
    TriangularBound { nodes: usize, limit: usize },

    #[error("partition is not connected")]
    DisconnectedPartition,

    #[error("partition cover invariant violated: {0}")]
    InvariantViolation(String),

    #[error("memory estimate requires N >= 2 and M >= 1, got N={n}, M={m}")]
    EstimateRange { n: u64, m: u64 },

    #[error("infeasible generator configuration: {0}")]
    Infeasible(String),

    #[error("invalid sweep configuration: {0}")]
    InvalidSweep(String),

    #[error("sweep point {value} infeasible: {detail}")]
    SweepPoint { value: u64, detail: String },

    #[error("linear fit needs at least {needed} points, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
