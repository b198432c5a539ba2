use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Input and contract errors. Negative answers (infeasible instances,
/// unsatisfiable formulas, null trees) are values, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("parallel edge `{0}`-`{1}`")]
    ParallelEdge(String, String),
    #[error("`{0}`-`{1}` is not an edge")]
    NotAnEdge(String, String),
    #[error("edge `{0}`-`{1}` oriented both ways")]
    BothWays(String, String),
    #[error("empty graph")]
    EmptyGraph,
    #[error("empty ground set")]
    EmptyGround,
    #[error("not a sunflower instance: {0}")]
    NotSunflower(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("partial representation does not realize the induced subgraph: {0}")]
    PartialMismatch(String),
    #[error("vertex set does not induce the declared subgraph: {0}")]
    InducedMismatch(String),
    #[error("missing orientation for node {0}")]
    MissingOrientation(usize),
    #[error("node {0} is a leaf")]
    LeafNode(usize),
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
    #[error("{0}")]
    Invalid(String),
}
