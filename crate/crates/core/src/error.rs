use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("coefficient rings differ: {0} and {1} variables")]
    RingMismatch(usize, usize),
    #[error("evaluation point is a pole")]
    PoleHit,
    #[error("ring size {0} exceeds the supported maximum")]
    TooManyVariables(usize),
    #[error("weight {0} is not in the root lattice")]
    NotInRootLattice(String),
    #[error("projector factor exceeded its truncation cap of {0}")]
    TruncationCapExceeded(usize),
    #[error("rewriting exceeded the step cap of {0}")]
    StepCapExceeded(usize),
    #[error("no ordering rule for the pair {0}")]
    MissingRule(String),
    #[error("matrix is singular")]
    Singular,
    #[error("Cauchy matrix has a zero denominator")]
    ZeroDenominator,
    #[error("Cauchy nodes are not pairwise distinct")]
    DegenerateNodes,
    #[error("weight block {0} is singular")]
    SingularBlock(String),
    #[error("relation has a column-{0} letter as a left factor")]
    NotCuttable(usize),
    #[error("difference for {0} is not in the stabilization span")]
    SpanFailure(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
