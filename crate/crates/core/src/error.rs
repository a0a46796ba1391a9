use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("edge {{{0}, {1}}} already exists")]
    EdgeExists(usize, usize),
    #[error("edge {{{0}, {1}}} does not exist")]
    EdgeMissing(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph contains a cycle")]
    HasCycle,
    #[error("graph is not unicyclic")]
    NotUnicyclic,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph is non-singular")]
    NonSingular,
    #[error("expected nullity {expected}, found {found}")]
    WrongNullity { expected: usize, found: usize },
    #[error("core vertices {0} and {1} are adjacent")]
    NonIndependentCore(usize, usize),
    #[error("removing the remote core-forbidden vertices changed {0}")]
    SlimReductionFailed(String),
    #[error("invalid generator argument: {0}")]
    InvalidArgument(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("edge {{{0}, {1}}} is not a valid candidate: {2}")]
    InvalidCandidate(usize, usize, String),
}

/// Edge-list parse failure, carrying the 1-based line it occurred on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header, expected \"n m\"")]
    MalformedHeader,
    #[error("missing header")]
    MissingHeader,
    #[error("malformed edge line, expected \"u w\"")]
    MalformedEdge,
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("header declares {declared} edges, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
}
