//! Flag codes for random linear network coding.
//!
//! Flags of subspaces over finite fields, their Grassmann, gallery and
//! `Sym_n`-valued distances, flag-code constructions built from rank-metric
//! codes, and a network channel simulator with minimum-error-count and
//! erasure decoders.

pub mod channel;
pub mod codes;
pub mod flags;
pub mod gfq;
pub mod rng;
pub mod symgrp;
pub mod verify;

pub use gfq::{Field, FieldElement, Matrix};
pub use symgrp::Permutation;
