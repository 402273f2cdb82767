use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a tournament needs at least one vertex")]
    EmptyTournament,
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("arc ({0}, {1}) listed twice")]
    DuplicateArc(usize, usize),
    #[error("both ({0}, {1}) and ({1}, {0}) present")]
    ConflictingArcs(usize, usize),
    #[error("pair {{{0}, {1}}} undecided")]
    MissingPair(usize, usize),
    #[error("expected {expected} vertices, got {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0}")]
    InvalidOrdering(String),
    #[error("vertex {0} repeated in set")]
    DuplicateVertex(usize),
    #[error("vertex set must be non-empty")]
    EmptySet,
    #[error("vertex set must be a proper subset")]
    FullSet,
    #[error("{what}: {n} vertices exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },
    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),
    #[error("override ({0}, {1}) does not reverse a cross-block arc")]
    InvalidOverride(usize, usize),
    #[error("sequence violates the U-property: {0}")]
    NotUChain(String),
    #[error("ordering is not sparse (width {0})")]
    NotSparseOrdering(usize),
    #[error("tournament is not sparse")]
    NotSparse,
    #[error("{0}: kind and order are incompatible")]
    CanonicalParity(&'static str, usize),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid formula: {0}")]
    InvalidFormula(String),
    #[error("invalid cubic graph: {0}")]
    InvalidGraph(String),
    #[error("ordering is not nice: {0}")]
    NotNice(String),
    #[error("ordering reaches the threshold {threshold} at vertex {vertex} (degree {degree})")]
    ThresholdReached {
        vertex: usize,
        degree: usize,
        threshold: usize,
    },
    #[error("not a vertex cover: edge {{{0}, {1}}} uncovered")]
    NotVertexCover(usize, usize),
    #[error("deleting the given set leaves a cycle")]
    NotFeedbackVertexSet,
    #[error("assignment covers {found} variables, formula has {expected}")]
    IncompleteAssignment { expected: usize, found: usize },
}
