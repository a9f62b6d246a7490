use thiserror::Error;

/// Failures raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operands live on different charts")]
    ChartMismatch,
    #[error("cannot contract a degree-{vec} multivector into a degree-{form} form")]
    DegreeError { vec: usize, form: usize },
    #[error("operation requires polynomial coefficients")]
    NonPolynomialCoefficients,
    #[error("invalid center: {0}")]
    InvalidCenter(String),
    #[error("bivector is not Poisson: {0}")]
    NotPoisson(String),
    #[error("Pfaffian vanishes identically")]
    DegeneratePfaffian,
    #[error("log-symplectic condition fails: {0}")]
    LogSymplecticViolation(String),
    #[error("form is not closed")]
    NotClosed,
    #[error("unsupported grading: {0}")]
    UnsupportedGrading(String),
    #[error("hypothesis (*) fails at multi-index {0:?}")]
    StarHypothesisFails(Vec<u32>),
    #[error("invalid Hodge diamond: {0}")]
    InvalidDiamond(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError { line: usize, column: usize, message: String },
    #[error("form has a pole along the stratum")]
    PoleOnStratum,
    #[error("commutator is not a multiple of the identity on slice {0:?}")]
    NotIdentityMultiple(Vec<u32>),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
