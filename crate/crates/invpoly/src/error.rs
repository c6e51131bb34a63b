use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("variable index {index} out of range at byte {offset} (expected 0..=4)")]
    VariableRange { offset: usize, index: u64 },
    #[error("duplicate monomial at byte {offset}")]
    DuplicateMonomial { offset: usize },
    #[error("expected 5 monomials, found {0}")]
    MonomialCount(usize),
    #[error("invalid exponent matrix: {0}")]
    Matrix(String),
    #[error("exponent matrix is singular")]
    Singular,
    #[error("solved weight w{0} is not positive")]
    NonPositiveWeight(usize),
    #[error("invalid weight system: {0}")]
    Weights(String),
    #[error("not an invertible polynomial: {0}")]
    NotInvertible(String),
    #[error("no structured split: {0}")]
    NoSplit(String),
    #[error("ambiguous structured split ({0} candidates)")]
    AmbiguousSplit(usize),
    #[error("non-integral {0}")]
    NonIntegral(&'static str),
    #[error("link is not a rational homology sphere")]
    NotQhs,
    #[error("{0}")]
    Precondition(String),
    #[error("input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
