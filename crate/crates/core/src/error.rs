use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown token `{0}`")]
    UnknownToken(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("{what}: budget of {budget} exceeded")]
    BudgetExceeded { what: String, budget: usize },

    #[error("rewriting system is not complete: {0}")]
    NotComplete(String),

    /// A structure broke one of its own contracts (missing stacking image,
    /// inconsistent normal forms, failed factorization).
    #[error("structural error: {0}")]
    Structure(String),

    #[error("`{0}` lies outside the explored domain of the structure")]
    OutsideDomain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(
        "almost convexity refuted at radius {radius} with constant {k}: \
         no in-ball path from `{from}` to `{to}`"
    )]
    AlmostConvexityRefuted {
        radius: usize,
        k: usize,
        from: String,
        to: String,
    },

    #[error("ball exceeds the memory cap of {0} elements")]
    MemoryCap(usize),

    #[error("unknown structure `{0}`")]
    UnknownStructure(String),

    #[error("unknown export format `{0}` (expected json, dot or svg)")]
    UnknownFormat(String),

    #[error("diagram gluing failed: {0}")]
    Glue(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn budget(what: impl Into<String>, budget: usize) -> Self {
        Error::BudgetExceeded {
            what: what.into(),
            budget,
        }
    }
}
