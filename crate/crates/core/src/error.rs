use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("unsupported field GF({p}^{m}): extension fields must have characteristic 2")]
    UnsupportedField { p: u32, m: u32 },

    #[error("field order {p}^{m} exceeds 2^16")]
    FieldTooLarge { p: u32, m: u32 },

    #[error("reduction polynomial {0:?} is not irreducible of the required degree")]
    BadReductionPolynomial(Vec<u32>),

    #[error("{0} is not a primitive element of the field")]
    NotPrimitive(u32),

    #[error("{value} is not an element of GF({q})")]
    NotAnElement { value: u32, q: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid constraint graph: {0}")]
    InvalidGraph(String),

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("{what} = {size} exceeds the exhaustive search limit {limit}; raise it with {flag}")]
    GuardExceeded {
        what: &'static str,
        size: u64,
        limit: u64,
        flag: &'static str,
    },

    #[error("no matching covers every message symbol; Hall's condition fails on rows {witness:?}")]
    NoMatching { witness: Vec<usize> },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("invalid code parameters: {0}")]
    InvalidCode(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("decoding failed: {0}")]
    DecodingFailure(String),

    #[error("decoded word is not in the row space of the transform matrix")]
    NotInRowSpace,

    #[error("transform matrix has rank {rank} < {expected}; decoding is ambiguous")]
    RankDeficient { rank: usize, expected: usize },

    #[error("code is not systematic")]
    NotSystematic,

    #[error("supplied generator is not MDS: {0}")]
    NotMds(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
