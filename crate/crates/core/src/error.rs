use thiserror::Error;

/// Errors raised by the library. Matrix positions are reported 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is empty")]
    EmptyMatrix,
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("matrix has {0} rows; at most 64 simple roots are supported")]
    TooManyNodes(usize),
    #[error("diagonal entry a_{{{i},{j}}} is not 2")]
    DiagonalNotTwo { i: usize, j: usize },
    #[error("off-diagonal entry a_{{{i},{j}}} is positive")]
    PositiveOffDiagonal { i: usize, j: usize },
    #[error("a_{{{i},{j}}} = 0 but a_{{{j},{i}}} != 0")]
    AsymmetricZero { i: usize, j: usize },
    #[error("invalid completion: {0}")]
    InvalidCompletion(String),
    #[error("weight has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("simple root index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("weight is not dominant: pairing with coroot {0} is negative")]
    DominanceViolated(usize),
    #[error("weight is not dominant and integral")]
    NotDominantIntegral,
    #[error("subset {0} is not mu-connected")]
    NotMuConnected(String),
    #[error("point does not lie in the chamber part of the orbit hull")]
    NotInChamberHull,
    #[error("the set of all simple roots is not mu-connected")]
    PiNotMuConnected,
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("vector is not a real root")]
    NotARealRoot,
    #[error("finite type required; finite-type slices: {suggestion}")]
    FiniteTypeRequired { suggestion: String },
    #[error("point set too large for the brute-force hull ({points} points, dimension {dim})")]
    TooLarge { points: usize, dim: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cannot parse element: {0}")]
    ElementParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
