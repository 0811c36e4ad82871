use crate::flags::{Flag, StutteringFlag};

use super::ChannelError;

/// Per-step erasures and errors of a received chain against a sent one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorCount {
    /// `Σ_i (dim(V_i + W_i) − dim(V_i ∩ W_i))`.
    pub total: usize,
    /// `ρ_i = dim V_i − dim(V_i ∩ W_i)`.
    pub rho: Vec<usize>,
    /// `f_i = dim W_i − dim(V_i ∩ W_i)`.
    pub f: Vec<usize>,
}

impl ErrorCount {
    pub fn sum_rho(&self) -> usize {
        self.rho.iter().sum()
    }

    pub fn sum_f(&self) -> usize {
        self.f.iter().sum()
    }
}

/// Error count between two stuttering flags of equal length, `sent` in the
/// role of `V_i` and `received` in the role of `W_i`.
pub fn error_count_chains(sent: &StutteringFlag, received: &StutteringFlag) -> Result<ErrorCount, ChannelError> {
    if sent.len() != received.len() {
        return Err(ChannelError::LengthMismatch {
            expected: sent.len(),
            found: received.len(),
        });
    }
    if sent.ambient() != received.ambient() || sent.field() != received.field() {
        return Err(ChannelError::AmbientMismatch);
    }
    let mut rho = Vec::with_capacity(sent.len());
    let mut f = Vec::with_capacity(sent.len());
    let mut total = 0;
    for (v, w) in sent.members().iter().zip(received.members()) {
        let meet = v.intersection_dim(w)?;
        let join = v.dim() + w.dim() - meet;
        rho.push(v.dim() - meet);
        f.push(w.dim() - meet);
        total += join - meet;
    }
    debug_assert_eq!(total, rho.iter().sum::<usize>() + f.iter().sum::<usize>());
    Ok(ErrorCount { total, rho, f })
}

/// `E(Λ, Γ)` for a sent flag `Λ` and a received stuttering flag `Γ`.
pub fn error_count(sent: &Flag, received: &StutteringFlag) -> Result<ErrorCount, ChannelError> {
    error_count_chains(&StutteringFlag::from(sent), received)
}
