use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("polynomials live over different variable sets")]
    VariableMismatch,

    #[error("ideals use different gradings or ambient rings")]
    GradingMismatch,

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("input is not symmetric under permutations of the variable pairs")]
    NotSymmetric,

    #[error("vector {0:?} is not part of the bipartite partition")]
    MissingVector((u32, u32)),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("{what} = {value} exceeds the configured bound {bound}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("verification failure: {0}")]
    Verification(String),

    #[error("arithmetic overflow in integer lattice computation")]
    Overflow,

    #[error("structure-constant cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
