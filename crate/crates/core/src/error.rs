use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty edge list")]
    EmptyInput,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: loop arc {vertex} -> {vertex}")]
    Loop { line: usize, vertex: usize },
    #[error("loop arc {0} -> {0}")]
    LoopArc(usize),
    #[error("arc ({tail}, {head}) has an endpoint outside 0..{n}")]
    VertexOutOfRange { tail: usize, head: usize, n: usize },
    #[error("a digraph needs at least one vertex")]
    NoVertices,
    #[error("digraph is not strongly connected")]
    NotStronglyConnected,
    #[error("vertex {0} has outdegree 0")]
    ZeroOutDegree(usize),
    #[error("alpha = {0} is outside [0, 1)")]
    InvalidAlpha(f64),
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("exhaustive enumeration supports n <= 5, got n = {0}")]
    EnumerationTooLarge(usize),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unknown theorem identifier '{0}'")]
    UnknownTheorem(String),
}
