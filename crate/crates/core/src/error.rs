use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operation needs a finite field: {0}")]
    FieldUnsupported(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("ideal not admissible within path length {max_len}: {detail}")]
    NotAdmissibleWithinBound { max_len: usize, detail: String },
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("module is not certified Gorenstein projective: {0}")]
    NotGPInput(String),
    #[error("catalog verdict is unknown: {0}")]
    CatalogUnknown(String),
    #[error("catalog is not closed: {0}")]
    CatalogIncomplete(String),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("unsupported coefficient ring: {0}")]
    UnsupportedRing(String),
    #[error("stable endomorphism algebra is not commutative")]
    NoncommutativeStableEnd,
    #[error("search limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
