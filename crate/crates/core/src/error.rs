//! Error type shared by all modules of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty point set")]
    EmptyPointSet,

    #[error("halfspace intersection is unbounded")]
    UnboundedPolytope,

    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("rank deficient: rank {rank}, needed {needed}")]
    RankDeficient { rank: usize, needed: usize },

    #[error("the zero polynomial has no valuation")]
    ZeroPolynomial,

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: u32, got: u32 },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("invalid projective point: all coordinates are zero")]
    ZeroProjectivePoint,

    #[error("degrees must be sorted in nonincreasing order")]
    UnsortedDegrees,

    #[error("genericity not reached after {attempts} resampling attempts")]
    GenericityExhausted { attempts: usize },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
