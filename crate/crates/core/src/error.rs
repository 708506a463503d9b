use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("parameter `{0}` must be positive")]
    NonPositive(&'static str),
    #[error("empty vertex set")]
    EmptySet,
    #[error("vertices {0} and {1} lie in different components")]
    Unreachable(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("invalid tree-decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("decomposition node {0} does not exist")]
    InvalidNode(usize),
    #[error("{0}-{1} is not an edge of the decomposition tree")]
    NotATreeEdge(usize, usize),
    #[error("empty adhesion set on tree edge {0}-{1}")]
    EmptyAdhesion(usize, usize),
    #[error("torso of planar-type bag {0} is not planar")]
    NonPlanarTorso(usize),
    #[error("ball exploration exceeded the cap of {0} vertices")]
    ExplorationCap(usize),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("hypothesis violated at ({x}, {y}): {detail}")]
    Hypothesis { x: usize, y: usize, detail: String },
    #[error("lower distortion constant is zero; the map is not bilipschitz")]
    ZeroLowerConstant,
    #[error("coordinate is not 1-Lipschitz on edge {0}-{1}")]
    NonLipschitz(usize, usize),
    #[error("slice cover failed on block {block}: {source}")]
    SliceCover {
        block: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("roots miss the component containing vertex {0}")]
    UncoveredComponent(usize),
    #[error("malformed drawing: {0}")]
    MalformedDrawing(String),
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
