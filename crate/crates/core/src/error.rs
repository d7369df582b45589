use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative power of a polynomial that is not a unit")]
    NegativePowerOfNonUnit,
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: i64, strands: usize },
    #[error("strand range [{start}, {end}] must cover at least 2 and fewer than {strands} strands")]
    PartTooSmall { start: usize, end: usize, strands: usize },
    #[error("components {0} and {1} collide at non-rational points")]
    IrrationalCollisionUnresolved(usize, usize),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
