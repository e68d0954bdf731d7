use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("substitution requires inverting the non-unit {0}")]
    SubstitutionNotInvertible(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a complex: composite differential is nonzero ({0})")]
    NotAComplex(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("root datum mismatch: {0} vs {1}")]
    RootDatumMismatch(String, String),
    #[error("unknown root datum {0}")]
    UnknownDatum(String),
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("cocharacter {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("odd powers of v present; supply a square root of q")]
    NeedsSquareRoot,
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),
    #[error("differential does not square to zero: {0}")]
    DifferentialNotSquareZero(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("localization model inconsistent: {0}")]
    ModelInconsistent(String),
    #[error("q = {0} is a root of unity")]
    RootOfUnityQ(String),
    #[error("pair is not q-commuting: {0}")]
    NotQCommuting(String),
    #[error("type dimension mismatch: sum of n*r*d is {found}, expected {expected}")]
    TypeDimensionMismatch { expected: usize, found: usize },
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("bad composition {0:?} of {1}")]
    BadComposition(Vec<usize>, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
