use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A documented precondition of a check was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("division by an exact-zero residue")]
    DivisionByZero,
    #[error("residue has negative valuation {0} and is not an integer")]
    NegativeValuation(i64),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("engine `{engine}` does not support check `{check}`")]
    UnsupportedEngine { engine: String, check: String },
    #[error("unknown name `{0}`")]
    Unknown(String),
}

pub type Result<T> = std::result::Result<T, Error>;
