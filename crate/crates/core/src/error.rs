use thiserror::Error;

use crate::cohomology::BlockKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("commutation factor violates {identity} at {args:?}")]
    AxiomViolation {
        identity: &'static str,
        args: Vec<u32>,
    },

    #[error("descending sequence of degree {degree} stabilizes at dimension {dim} without reaching zero")]
    NotNilpotent { degree: u32, dim: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("joint kernel dimension {joint} differs from the sum of block dimensions {sum}")]
    DecompositionMismatch { joint: usize, sum: usize },

    #[error("cochain does not vanish on the characteristic vector: {0}")]
    CharacteristicVectorViolation(String),

    #[error("cochain is not a 2-cocycle: {0}")]
    NotACocycle(String),

    #[error("unsupported algebra: {0}")]
    Unsupported(String),

    #[error("unknown block {0:?}")]
    UnknownBlock(String),

    #[error("block {0} is not covered by this method")]
    BlockNotCovered(BlockKind),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
