use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation {word:?}: {reason}")]
    InvalidPermutation { word: Vec<u32>, reason: String },

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("insertion out of range: index {index} and value {value} must lie in 1..={max}")]
    InsertOutOfRange { index: usize, value: u32, max: usize },

    #[error("crossing word is not reduced")]
    NotReduced,

    #[error("no leading term: polynomial is zero")]
    ZeroPolynomial,

    #[error("division by x{0} - x{1} left a nonzero remainder")]
    InexactDivision(usize, usize),

    #[error("invalid labeling: {0}")]
    InvalidLabeling(String),

    #[error("invalid forest: {0}")]
    InvalidForest(String),

    #[error("n = {n} is outside the supported range 1..={max}")]
    SizeOutOfRange { n: usize, max: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
