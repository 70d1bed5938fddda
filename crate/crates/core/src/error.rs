use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("order relation fails: {0}")]
    NotBelow(String),
    #[error("not type C: {0}")]
    NotTypeC(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("pattern mismatch: {0}")]
    Pattern(String),
    #[error("graph rejected: {0}")]
    Graph(String),
    #[error("arithmetic: {0}")]
    Arithmetic(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
