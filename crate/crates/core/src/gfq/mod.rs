//! Exact arithmetic over finite fields GF(p^e) and dense matrices over them.

mod extension;
mod field;
mod matrix;
pub mod poly;

use thiserror::Error;

pub use extension::{ExtElement, ExtensionField};
pub use field::{Field, FieldElement, MAX_ORDER};
pub use matrix::{Matrix, Rref};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("modulus is reducible")]
    ReducibleModulus,
    #[error("modulus has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("modulus must be monic with coefficients in GF(p)")]
    NotMonic,
    #[error("GF({p}^{e}) exceeds the supported field order")]
    TooLarge { p: u32, e: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("basis elements are linearly dependent")]
    DependentBasis,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("entry {0} is not a valid field encoding")]
    EntryOutOfRange(u32),
    #[error("parse error: {0}")]
    Parse(String),
}
