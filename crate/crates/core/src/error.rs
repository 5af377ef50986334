use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {0} belongs to no facet")]
    GhostVertex(usize),
    #[error("vertex {vertex} out of range for a complex on {m} vertices")]
    VertexOutOfRange { vertex: usize, m: usize },
    #[error("{m} vertices requested, at most {max} are supported")]
    TooManyVertices { m: usize, max: usize },
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooSmall(usize),
    #[error("not a chain complex: composite of consecutive differentials is nonzero")]
    NotAComplex,
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("integral induced maps need torsion-free homology ({0}); rerun over Q or F_p")]
    TorsionObstruction(String),
    #[error("size cap exceeded: {what} needs {needed}, cap is {cap}")]
    SizeCap { what: &'static str, needed: usize, cap: usize },
    #[error("not a cube edge: {0}")]
    NotCubeEdge(String),
    #[error("the complex is a simplex")]
    IsSimplex,
    #[error("the complex or graph is disconnected")]
    Disconnected,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
