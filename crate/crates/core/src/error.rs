use crate::graph::{EdgeId, VertexId};

pub type Result<T> = std::result::Result<T, Error>;

/// Why a [`FaceSelection`](crate::graph::FaceSelection) was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SelectionError {
    UnknownFace(usize),
    Empty,
    OddVertexCount(usize),
    RepeatedVertex(VertexId),
    NotOnFace(VertexId),
    NotCyclicOrder,
    EdgeCountMismatch { vertices: usize, edges: usize },
    EdgeMismatch { index: usize },
    EdgesNotIndependent,
    EdgeNotOnFace(EdgeId),
}

impl std::fmt::Display for SelectionError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SelectionError::UnknownFace(id) => write!(f, "face {id} does not exist"),
            SelectionError::Empty => write!(f, "no marked vertices"),
            SelectionError::OddVertexCount(n) => write!(f, "{n} marked vertices, expected an even count"),
            SelectionError::RepeatedVertex(v) => write!(f, "vertex {v} is marked twice"),
            SelectionError::NotOnFace(v) => write!(f, "vertex {v} is not on the face boundary"),
            SelectionError::NotCyclicOrder => write!(f, "marked vertices are not in cyclic order on the face"),
            SelectionError::EdgeCountMismatch { vertices, edges } => {
                write!(f, "{edges} marked edges for {vertices} marked vertices")
            }
            SelectionError::EdgeMismatch { index } => {
                write!(f, "marked edge {} does not join its marked endpoints", index + 1)
            }
            SelectionError::EdgesNotIndependent => write!(f, "marked edges share an endpoint"),
            SelectionError::EdgeNotOnFace(e) => write!(f, "edge {e} is not on the face boundary"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("rotation at vertex {0} does not list exactly its incident edges")]
    MalformedRotation(VertexId),
    #[error("rotation system is not planar: component of {vertices} vertices, {edges} edges has {faces} faces")]
    EulerViolation { vertices: usize, edges: usize, faces: usize },
    #[error("duplicate edge between {0} and {1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("duplicate edge id {0}")]
    DuplicateEdgeId(EdgeId),
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("loop edge at vertex {0}")]
    LoopEdge(VertexId),
    #[error("edge {0} has zero weight")]
    ZeroWeight(EdgeId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),

    #[error("no value assigned to variable `{0}`")]
    MissingVariable(String),
    #[error("cannot parse weight `{input}`: {reason}")]
    WeightParse { input: String, reason: String },
    #[error("division by zero")]
    DivisionByZero,

    #[error("more than {cap} perfect matchings")]
    ResultTooLarge { cap: usize },
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("the Pfaffian method needs scalar weights")]
    PolynomialWeights,
    #[error("edge {0} has a negative weight")]
    NegativeWeight(EdgeId),

    #[error("index sets over different ground sets ({0} vs {1})")]
    GroundSetMismatch(usize, usize),
    #[error("index {index} outside 1..={k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("invalid selection: {0}")]
    InvalidSelection(SelectionError),
    #[error("marked edges are not independent")]
    EdgesNotIndependent,
    #[error("marked vertices are not on the outer face")]
    SelectionNotOnOuterFace,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("marked vertices violate the colour-class requirement: {0}")]
    ColorClassViolation(String),
    #[error("colour classes of the marked vertices have sizes {0} and {1}")]
    CardinalityMismatch(usize, usize),
    #[error("needs {required} marked pairs, got {found}")]
    PairCount { required: &'static str, found: usize },
    #[error("graph has an odd number of vertices ({0})")]
    OddOrder(usize),
    #[error("invalid symmetric graph: {0}")]
    InvalidSymmetry(String),

    #[error("Aztec diamond order {n} is below the minimum {min}")]
    InvalidOrder { n: usize, min: usize },
    #[error("Aztec diamond order {n} exceeds the limit {limit} for {action}")]
    OrderTooLarge { n: usize, limit: usize, action: &'static str },
    #[error("edge {0} receives two different column weights")]
    ColumnAssignmentConflict(EdgeId),

    #[error("malformed graph file: {0}")]
    Format(String),
    #[error("no valid selection found after {0} attempts")]
    GenerationExhausted(usize),
}

impl From<SelectionError> for Error {
    fn from(e: SelectionError) -> Self {
        Error::InvalidSelection(e)
    }
}
