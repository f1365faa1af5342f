//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} out of range (1..=63)")]
    InvalidModulus(u32),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("interval endpoint {endpoint} out of range for modulus {k}")]
    EndpointOutOfRange { endpoint: i64, k: u32 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(u32),
    #[error("unknown edge index {0}")]
    UnknownEdge(usize),
    #[error("self-loops are not supported")]
    SelfLoop,
    #[error("vertex {0} has degree {1}, expected {2}")]
    WrongDegree(u32, usize, usize),
    #[error("edge {0} is not a simple edge")]
    NotSimple(usize),
    #[error("smoothing vertex {0} would create a self-loop")]
    SmoothingLoop(u32),
    #[error("expansion of vertex {vertex} does not reattach incident edge {edge}")]
    UnmappedAttachment { vertex: u32, edge: usize },
    #[error("attachment vertex {0} is not part of the replacement graph")]
    BadAttachment(u32),
    #[error("terminals must be two distinct existing vertices")]
    BadTerminals,
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("flow modulus r = {0} is outside the supported range")]
    UnsupportedModulus(String),
    #[error("network capacities are expressed for r = {0}, cannot analyze at r = {1}")]
    ContextMismatch(String, String),
    #[error("network has no edges")]
    NoEdges,
    #[error("capacity is not symmetric under negation: {0}")]
    AsymmetricCapacity(String),
    #[error("unknown gadget '{0}'")]
    UnknownGadget(String),
    #[error("gadget '{0}' has no declared capacity at r = {1}")]
    GadgetAt(String, String),
    #[error("certificate error: {0}")]
    Certificate(String),

    #[error("budget exhausted before the decision completed")]
    BudgetExhausted,
    #[error("graph is not cubic")]
    NotCubic,
    #[error("edge list does not form a simple cycle")]
    NotACycle,
    #[error("cycle has even length, expected odd")]
    NotOddCycle,
    #[error("capacity must have measure 2, got {0}")]
    MeasureNot2(u32),
    #[error("union of replacement capacities has amplitude {0} > 3")]
    AmplitudeTooLarge(u32),
    #[error("third edge at cycle vertex {0} has capacity outside the open base window")]
    ThirdEdgeTooWide(u32),
    #[error("hypergraph error: {0}")]
    Hypergraph(String),
    #[error("witness parameter must satisfy 0 < eps < {bound}, got {eps}")]
    BadEpsilon { eps: String, bound: String },
    #[error("not a proper 2-coloring of the hypergraph")]
    BadColoring,
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
