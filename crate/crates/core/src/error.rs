use thiserror::Error;

/// Errors produced anywhere in the toolkit.
///
/// Variants are grouped so that callers (the CLI in particular) can map them
/// onto "bad input", "precondition violated" and "ran out of precision".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,

    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("polynomial is not square-free")]
    NotSquareFree,

    #[error("endpoint {0} is a root")]
    EndpointIsRoot(String),

    #[error("empty interval: lo must be strictly below hi")]
    EmptyInterval,

    #[error("polynomial is not reciprocal")]
    NotReciprocal,

    #[error("polynomial has odd degree {0}")]
    OddDegree(usize),

    #[error("polynomial must be monic")]
    NotMonic,

    #[error("polynomial is reducible")]
    Reducible,

    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("not an isometry spectrum: {0}")]
    NotIsometrySpectrum(String),

    #[error("precision exhausted after {bits} bits")]
    PrecisionExhausted { bits: u32 },

    #[error("root selector matched {0} roots, expected exactly one")]
    SelectorMismatch(usize),

    #[error("number field modulus mismatch")]
    ModulusMismatch,

    #[error("invalid root system {0}")]
    InvalidRootSystem(String),

    #[error("not a Salem polynomial")]
    NotSalem,

    #[error("wrong degree: expected {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },

    #[error("curve graph is not a tree")]
    NotATree,

    #[error("degenerate fixed-point configuration: {0}")]
    Degenerate(String),

    #[error("inconsistent Lefschetz data: {0}")]
    Inconsistent(String),

    #[error("expected exactly one unknown fixed point, found {0}")]
    UnknownCount(usize),

    #[error("criterion inconclusive: {0}")]
    Inconclusive(String),

    #[error("boundary case: {0}")]
    Boundary(String),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
