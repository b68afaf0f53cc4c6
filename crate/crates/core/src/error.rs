use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("{what} index {index} out of range (max {max})")]
    IndexOutOfRange { what: &'static str, index: usize, max: usize },
    #[error("invalid bijection {0:?}: not a permutation of 0..{1}")]
    InvalidBijection(Vec<usize>, usize),
    #[error("operation requires degree m >= {needed}, got m = {m}")]
    DegreeTooSmall { m: usize, needed: usize },
    #[error("operation requires exact arithmetic")]
    ExactOnly,
    #[error("E is singular")]
    SingularE,
    #[error("state pencil λE - A is singular")]
    SingularStatePencil,
    #[error("pencil is singular (determinant vanishes identically); spectrum undefined")]
    SingularPencil,
    #[error("term {term}: denominator must have degree 1, found {degree}")]
    DenominatorDegree { term: usize, degree: isize },
    #[error("pencil is not in system block form: {0}")]
    Structure(String),
    #[error("certificate residual nonzero at ({row}, {col})")]
    Certificate { row: usize, col: usize },
    #[error("numerical routine failed: {0}")]
    Numeric(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
