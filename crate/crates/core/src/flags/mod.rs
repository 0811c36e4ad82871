//! Subspaces and flags of `K^n`, the standard apartment, Bruhat relative
//! position, and the Grassmann, gallery and `Sym_n`-valued distances.
//!
//! Matrices act on row vectors from the right; the standard flag `Δ_0` has
//! members `V_i = ⟨e_1, ..., e_i⟩` and its stabilizer is the group of
//! invertible lower-triangular matrices.

mod bruhat;
mod distance;
mod flag;
mod subspace;

use thiserror::Error;

use crate::symgrp::PermError;

pub use bruhat::{bruhat_decompose, circle_enumerate, BruhatDecomposition, CIRCLE_LIMIT};
pub use distance::{gallery_distance, grassmann_distance, partial_relative_position, relative_position};
pub use flag::{apartment_flag, flag_from_matrix, permutation_matrix, standard_flag, Flag, FlagType, StutteringFlag};
pub use subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlagError {
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("flags have different types")]
    TypeMismatch,
    #[error("operation requires full flags")]
    NotFullFlag,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("enumeration exceeds the size limit")]
    TooLarge,
    #[error("invalid flag type: {0}")]
    InvalidType(String),
    #[error("members are not nested")]
    NotNested,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}
