use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field specification: {0}")]
    InvalidFieldSpec(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("leading coefficient is zero, equation is not quadratic")]
    NotQuadratic,

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("the zero vector is not a projective point")]
    InvalidPoint,

    #[error("singular matrix")]
    SingularInput,

    #[error("not a Singer element: {0}")]
    NotSinger(String),

    #[error("degenerate cross-ratio tuple (x = w or y = z)")]
    DegenerateTuple,

    #[error("incompatible inputs: {0}")]
    IncompatibleInputs(String),

    #[error("exponent set has the wrong shape: {0}")]
    InvalidShape(String),

    #[error("outside the hypotheses: {0}")]
    OutOfHypothesis(String),

    #[error("distance cap must be at least 2, got {0}")]
    InvalidCap(u32),

    #[error("codeword enumeration only runs for m = 3, got m = {0}")]
    OracleTooLarge(u32),
}
