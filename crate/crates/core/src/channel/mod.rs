//! Multicast of flags over a network with random linear network coding,
//! erasure and error injection, and the two decoders.
//!
//! At step `i` the source sends random combinations of a basis of `V_i`;
//! every node forwards random combinations of what it holds. The receiver
//! accumulates `W_i`, giving a stuttering flag `Γ` whose distance from the
//! sent flag `Λ` is the error count `E(Λ, Γ) = Σ (ρ_i + f_i)`.

mod count;
mod decode;
mod experiment;
mod simulate;
mod topology;

use thiserror::Error;

use crate::codes::CodeError;
use crate::flags::FlagError;
use crate::gfq::MatrixError;

pub use count::{error_count, error_count_chains, ErrorCount};
pub use decode::{decode_derived_erasure, decode_min_distance, DecodeResult};
pub use experiment::{monte_carlo, trial_seed, MonteCarloReport, TrialRow, CSV_HEADER};
pub use simulate::{
    check_capacity, simulate_transfer, simulate_with_rng, Buffering, Injection, TransmissionConfig, TransmissionRecord,
};
pub use topology::{NetworkTopology, NodeRole};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChannelError {
    #[error("step {step} needs {increment} new dimensions but the min-cut to {receiver} is {min_cut}")]
    CapacityExceeded {
        receiver: String,
        step: usize,
        increment: usize,
        min_cut: usize,
    },
    #[error("gave up after {attempts} attempts")]
    RetryLimitExceeded { attempts: usize },
    #[error("expected {expected} members, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("chains live in different ambient spaces")]
    AmbientMismatch,
    #[error("the code is empty")]
    EmptyCode,
    #[error("deficient run of length {length} from step {start} exceeds {limit}")]
    RunTooLong { start: usize, length: usize, limit: usize },
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}
