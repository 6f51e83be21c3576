use thiserror::Error;

/// Errors surfaced by graph construction, walk assembly, and the analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("capacity exceeded: {what} = {got} is over the cap of {cap}")]
    Capacity {
        what: &'static str,
        got: usize,
        cap: usize,
    },

    #[error("graph is disconnected; spectral operations require a connected graph")]
    Disconnected,

    #[error("vertex {0} is isolated; the walk needs minimum degree 1")]
    IsolatedVertex(usize),

    #[error("vertex index {index} out of range for {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("graph is not distance-regular")]
    NotDistanceRegular,

    #[error("scheme hypothesis violated: {0}")]
    SchemeHypothesis(String),

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
