use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("degree overflow: factors of total degree {degree} exceed bound {bound}")]
    DegreeOverflow { degree: usize, bound: usize },
    #[error("polynomial vanishes at the distinguished node")]
    VanishingAtNode,
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("node set is not solvable: {0}")]
    NotSolvable(String),
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
}

pub type Result<T> = std::result::Result<T, Error>;
