use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid node name `{0}`")]
    InvalidName(String),
    #[error("node `{0}` declared twice")]
    DuplicateNode(String),
    #[error("edge endpoint `{0}` was never declared")]
    UnknownEndpoint(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("directed edges contain a cycle")]
    CyclicDirectedPart,
    #[error("graph already contains latent nodes")]
    AlreadyExpanded,
    #[error("graph has bidirected edges; expand them into latent nodes before moralizing")]
    UnexpandedBidirected,
    #[error("node {0} has been removed from the moral graph")]
    NodeRemoved(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SepError {
    #[error("separation query sets must be pairwise disjoint")]
    OverlappingSets,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FdError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error(transparent)]
    Sep(#[from] SepError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {0} nodes; the brute-force oracle accepts at most {1}")]
    GraphTooLarge(usize, usize),
    #[error("range has {0} free variables; enumeration accepts at most {1}")]
    RangeTooLarge(usize, usize),
}

/// Failure to read the line-oriented graph format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: self-loop on `{name}`")]
    SelfLoop { line: usize, name: String },
    #[error("directed edges contain a cycle")]
    CyclicDirectedPart,
}
