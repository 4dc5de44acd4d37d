use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("singular matrix")]
    Singular,

    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),

    #[error("invalid face: {0}")]
    InvalidFace(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A lattice scan would visit more candidates than the configured cap.
    #[error("scan of {needed} candidate points exceeds the enumeration cap of {cap}")]
    CapExceeded { cap: u64, needed: String },

    /// The simplex does not have exactly one interior lattice point.
    #[error("simplex has {interior} interior lattice points, expected exactly one")]
    NotOnePoint { interior: usize },

    /// A constructed object failed its own verification. Never expected.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
