use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("dimension vectors are defined over different quivers")]
    QuiverMismatch,

    #[error("quiver is not of Dynkin type ({0}): the path algebra is representation-infinite")]
    NonDynkin(String),

    #[error("quiver is disconnected; reconstruction needs a connected quiver")]
    Disconnected,

    #[error("negative Ext dimension {0}: input is not a pair of indecomposables")]
    NegativeExt(i64),

    #[error("module is decomposable (dim End = {0})")]
    Decomposable(usize),

    #[error("module set {0:?} is not support tilting")]
    NotSupportTilting(Vec<usize>),

    #[error("poset format: {0}")]
    PosetFormat(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("element {target} is not a direct predecessor of {base}")]
    NotPredecessor { base: u64, target: u64 },

    #[error("reconstruction failed: {0}")]
    Reconstruction(String),

    /// An internal consistency check failed. Seeing this means a bug, not bad input.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
