use thiserror::Error;

use crate::group::Family;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    CompositeP(u64),
    #[error("extension degree must be at least 1, got {0}")]
    BadDegree(u32),
    #[error("field of order {0} exceeds the arithmetic table cap")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("coefficient list {0:?} is not a reduced element of the field")]
    BadElement(Vec<u32>),
    #[error("matrix determinant is not admissible for {0}")]
    BadDeterminant(Family),
    #[error("operands come from different group contexts")]
    MixedContexts,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("group of order {order} exceeds the enumeration cap of {cap}")]
    TooLarge { order: u64, cap: u64 },
    #[error("element set is not closed under multiplication")]
    NotASubgroup,
    #[error("subgroup of order {0} matched no branch of the classification")]
    Unclassified(usize),
    #[error("string representation failed validation: {0}")]
    NotValidated(String),
    #[error("expected rank {expected}, got {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("parabolic subgroup of kind {kind} contradicts the facet theorem")]
    FacetTheoremViolation { kind: String },
    #[error("family {0} is not supported by this operation")]
    UnsupportedFamily(Family),
    #[error("{0}")]
    BadCongruence(String),
    #[error("no admissible extending involution was found")]
    NotExtendible,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("search space exhausted without a witness")]
    SearchExhausted,
    #[error("rank {0} is outside the supported range")]
    BadRank(usize),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
