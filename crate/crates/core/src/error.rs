use thiserror::Error;

/// Errors raised while building or evaluating structures.
///
/// Law failures are not errors: checkers report them as verdicts. These
/// variants cover malformed input, cap violations and broken preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("generator index {0} is out of range")]
    GeneratorOutOfRange(usize),

    #[error("unit generator `{0}` must have degree 0")]
    UnitDegree(String),

    #[error("no unit generator is designated")]
    MissingUnit,

    #[error("map `{map}` is not homogeneous of degree {degree}: {detail}")]
    Inhomogeneous {
        map: String,
        degree: i64,
        detail: String,
    },

    #[error("length {length} exceeds the cap {cap}")]
    CapExceeded { length: usize, cap: usize },

    #[error("element has nonzero counit; the reduced coproduct needs a reduced element")]
    NonReduced,

    #[error("coalgebra map component is nonzero on the unit")]
    NonZeroOnUnit,

    #[error("invalid truncation policy: {0}")]
    InvalidPolicy(String),

    #[error("twisting component t_1 must be the identity")]
    NonUnipotentTwisting,

    #[error("law `{law}` violated at {witness}")]
    LawViolation { law: String, witness: String },

    #[error("product {left} * {right} leaves the truncation")]
    Truncated { left: String, right: String },

    #[error("not conilpotent at truncation {cap}: {witness}")]
    NotConilpotent { cap: usize, witness: String },

    #[error("structure map does not restrict to primitives: {0}")]
    ClosureFailure(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
