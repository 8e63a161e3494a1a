use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("malformed matrix: {0}")]
    Malformed(String),

    #[error("matrix is singular")]
    Singular,

    #[error("determinant {det} is not +1 or -1")]
    NotUnimodular { det: String },

    #[error("negative power requested but the inverse is not integral")]
    NonIntegralInverse,

    #[error("not an element of SL(3,Z): {0}")]
    NotSpecialLinear(String),

    #[error("element has finite order")]
    FiniteOrder,

    #[error("matrix is not unipotent")]
    NotUnipotent,

    #[error("polynomial is not a monic cubic with constant term -1: {0}")]
    BadPolynomial(String),

    #[error("operation not defined for class {0}")]
    WrongClass(String),

    #[error("search bound exhausted: {0}")]
    BoundExhausted(String),

    #[error("invalid search bound: {0}")]
    InvalidBound(String),

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("invalid chain complex: {0}")]
    InvalidComplex(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotSquare { .. } => "NotSquare",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::Malformed(_) => "Malformed",
            Error::Singular => "Singular",
            Error::NotUnimodular { .. } => "NotUnimodular",
            Error::NonIntegralInverse => "NonIntegralInverse",
            Error::NotSpecialLinear(_) => "NotSpecialLinear",
            Error::FiniteOrder => "FiniteOrder",
            Error::NotUnipotent => "NotUnipotent",
            Error::BadPolynomial(_) => "BadPolynomial",
            Error::WrongClass(_) => "WrongClass",
            Error::BoundExhausted(_) => "BoundExhausted",
            Error::InvalidBound(_) => "InvalidBound",
            Error::InvalidAutomorphism(_) => "InvalidAutomorphism",
            Error::InvalidComplex(_) => "InvalidComplex",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
