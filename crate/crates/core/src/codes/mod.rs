//! Rank-metric generators and flag codes.
//!
//! A [`FlagCode`] is the orbit of a standard flag under a finite set of
//! block-unitriangular matrices. Four constructions are provided: lifted
//! rank-metric codes, the sandwich code on type `{m, 2m, 3m}`,
//! checkerboard codes, and orbits of the derived subgroups of the upper
//! unitriangular group.

mod construct;
mod distance;
mod file;
mod mrd;

use thiserror::Error;

use crate::flags::FlagError;
use crate::gfq::{FieldError, MatrixError};

pub use construct::{code_checkerboard, code_derived, code_lifted, code_sandwich, checkerboard_generator, sandwich_generator, FlagCode};
pub use distance::{code_min_distance, ebar, is_group, DistanceMode};
pub use mrd::{mrd_field_rep, mrd_gabidulin, MrdCode, MrdGenerator};

/// Largest codebook or rank-metric code that is enumerated.
pub const ENUMERATION_LIMIT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("code is too large to enumerate")]
    TooLarge,
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("generator set is not a group")]
    NotAGroup,
    #[error("minimum distance of a code with fewer than two codewords is undefined")]
    EmptyDistance,
    #[error("codebook contains duplicate flags")]
    DuplicateCodeword,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Flag(#[from] FlagError),
}
