use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(
        "ideal has {count} minimal generators, above the oracle cap of {cap}; \
         use the a-stable closed formula or Hochster's formula instead"
    )]
    OracleCap { count: usize, cap: usize },

    #[error("ideal is not a-stable for bound vector ({0})")]
    NotAStable(String),

    #[error("malformed chain complex: {0}")]
    ChainComplex(String),

    #[error("the unit ideal has no quotient ring to analyse")]
    UnitIdeal,

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
