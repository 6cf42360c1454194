use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("degree of zero undefined")]
    ZeroDegree,
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),
    #[error("zero element not allowed: {0}")]
    ZeroElement(String),
    #[error("ill-defined map: {0}")]
    IllDefinedMap(String),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("N outside admissible class: {0}")]
    NotAdmissible(String),
    #[error("module is not monomial-presented: {0}")]
    NotMonomial(String),
    #[error("window too large: {points} lattice points (cap {cap})")]
    WindowTooLarge { points: u64, cap: u64 },
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("margin insufficient: {0}")]
    MarginInsufficient(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
