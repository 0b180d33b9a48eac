use thiserror::Error;

use crate::hypergraph::Triple;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("hypergraph needs at least one vertex")]
    NoVertices,
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("triple {0:?} repeats a vertex")]
    RepeatedVertex([usize; 3]),
    #[error("expected two distinct vertices, got {0} twice")]
    SameVertex(usize),
    #[error("degree order must be 1 or 2, got {0}")]
    BadDegreeOrder(usize),
    #[error("vertex {0} lies inside the link base set")]
    LinkVertexInSet(usize),
    #[error("link base sets overlap at vertex {0}")]
    OverlappingSets(usize),
    #[error("edges {0:?} and {1:?} are not disjoint")]
    NotDisjoint(Triple, Triple),
    #[error("triple {0:?} is not an edge of the hypergraph")]
    NotAnEdge(Triple),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("instance has {edges} edges on {n} vertices, over the brute-force cap of {cap} edges")]
    OverCap { n: usize, edges: usize, cap: usize },
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("condition (i) cannot be met: need {required} W-touching edges, at most {achievable} possible")]
    CoverInfeasible { required: usize, achievable: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
