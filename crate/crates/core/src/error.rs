use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parabolic data: {0}")]
    InvalidParabolic(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<u8>),
    #[error("mixing E and F families")]
    FamilyMismatch,
    #[error("oracle budget exceeded: {what} needs {size} words, cap is {cap}")]
    BudgetExceeded { what: String, size: u128, cap: usize },
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
    #[error("({0},{1}) is not in Phi_J")]
    NotInPhi(usize, usize),
    #[error("classification error: {0}")]
    Classification(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("not normal: {0}")]
    NonNormal(String),
    #[error("invalid kind: {0}")]
    InvalidKind(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
