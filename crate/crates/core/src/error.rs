use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("candidate count must be at least 3, got {0}")]
    TooFewCandidates(usize),
    #[error("candidate index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("pair ({0}, {1}) listed in both orientations")]
    ConflictingEdge(usize, usize),
    #[error("pair must have two distinct candidates, got ({0}, {0})")]
    SelfPair(usize),
    #[error("the two vertices of a pair must differ")]
    SamePair,
    #[error("operation requires a full choice function")]
    NotFull,
    #[error("operands have different candidate counts ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("enumerating {0} candidates exceeds the orbit cap {1} (set MF_ORBIT_CAP to raise)")]
    OrbitTooLarge(usize, usize),
    #[error("subset scan over {0} candidates exceeds the cap {1}")]
    TooManyCandidates(usize, usize),
    #[error("value {0} lies outside [0, 1]")]
    OutOfUnitInterval(String),
    #[error("profile weights sum to {0}, expected 1")]
    WeightsDoNotSumToOne(String),
    #[error("profile weights must be positive")]
    NonpositiveWeight,
    #[error("profile must contain at least one voter")]
    EmptyProfile,
    #[error("linear program row {row} has {got} coefficients, expected {expected}")]
    MalformedProgram {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("the generator family is balanced: no single-pair bias exists")]
    BalancedFamily,
    #[error("target is not realizable from this family")]
    NotRealizable,
    #[error("target is not pseudo-balanced")]
    NotPseudoBalanced,
    #[error("generator is not balanced")]
    NotBalanced,
    #[error("balanced full generator unexpectedly has no directed triangle")]
    BalancedTriangleMissing,
    #[error("cycle vertices must be distinct")]
    RepeatedVertex,
    #[error("a cycle needs at least 3 vertices, got {0}")]
    TooShort(usize),
    #[error("enumeration scope too large: n = {0} exceeds {1}")]
    ScopeTooLarge(usize, usize),
    #[error("cyclic generator needs odd n, got {0}")]
    CyclicNeedsOddN(usize),
    #[error("parse error at line {line}: {msg}")]
    ParseError { line: usize, msg: String },
    #[error("internal check failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
