use crate::codes::FlagCode;
use crate::flags::{Flag, StutteringFlag, Subspace};
use crate::gfq::{Field, Matrix};

use super::{error_count, ChannelError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    /// First codebook index attaining the minimum.
    pub index: usize,
    pub codeword: Flag,
    pub error_count: usize,
    /// False when another codeword ties at the minimum.
    pub unique: bool,
}

/// Minimum error-count decoding by a scan of the codebook.
pub fn decode_min_distance(code: &FlagCode, received: &StutteringFlag) -> Result<DecodeResult, ChannelError> {
    let mut best: Option<(usize, usize)> = None;
    let mut ties = 0;
    for (i, c) in code.codebook().iter().enumerate() {
        let e = error_count(c, received)?.total;
        match best {
            Some((_, b)) if e > b => {}
            Some((_, b)) if e == b => ties += 1,
            _ => {
                best = Some((i, e));
                ties = 0;
            }
        }
    }
    let (index, error_count) = best.ok_or(ChannelError::EmptyCode)?;
    Ok(DecodeResult {
        index,
        codeword: code.codebook()[index].clone(),
        error_count,
        unique: ties == 0,
    })
}

/// Recovers `g ∈ D^{(k)}` from an erasure-only reception of `Δ_0 g`.
///
/// Step `j` is deficient when `dim W_j < j`. From every full step the
/// reduced echelon form of `W_j` reveals rows `j−k−1 .. j−1` (0-based) of
/// `g`, because those rows vanish on columns `< j` apart from their
/// diagonal one. Rows from `n−k−1` on are standard basis vectors.
pub fn decode_derived_erasure(
    field: &Field,
    n: usize,
    k: usize,
    received: &StutteringFlag,
) -> Result<Matrix, ChannelError> {
    if n < 2 || k >= n {
        return Err(ChannelError::InvalidConfig(format!("need n >= 2 and k < n, got n={n} k={k}")));
    }
    if received.len() != n - 1 {
        return Err(ChannelError::LengthMismatch {
            expected: n - 1,
            found: received.len(),
        });
    }
    if received.ambient() != n || received.field() != field {
        return Err(ChannelError::AmbientMismatch);
    }
    let inconsistent = |msg: &str| ChannelError::InconsistentInput(msg.to_string());
    let members = received.members();

    let mut run_start = 0;
    let mut run = 0;
    for (j, w) in members.iter().enumerate() {
        let step = j + 1;
        if w.dim() > step {
            return Err(inconsistent("a received space is larger than the sent one"));
        }
        if w.dim() < step {
            if run == 0 {
                run_start = step;
            }
            run += 1;
            if run > k {
                return Err(ChannelError::RunTooLong {
                    start: run_start,
                    length: run,
                    limit: k,
                });
            }
        } else {
            run = 0;
        }
    }

    let mut rows: Vec<Option<Vec<u32>>> = vec![None; n];
    for (i, row) in rows.iter_mut().enumerate().skip((n - k).saturating_sub(1)) {
        let mut e = vec![0; n];
        e[i] = 1;
        *row = Some(e);
    }
    for (j, w) in members.iter().enumerate() {
        let step = j + 1;
        if w.dim() < step {
            continue;
        }
        // the canonical basis is already the reduced echelon form
        let basis = w.basis();
        for i in (step.saturating_sub(k + 1))..step {
            let candidate = basis.row(i);
            if (0..step).any(|c| candidate[c] != u32::from(c == i)) {
                return Err(inconsistent("received space is not in echelon position"));
            }
            match &rows[i] {
                Some(existing) if existing.as_slice() != candidate => {
                    return Err(inconsistent("steps disagree on a row of g"));
                }
                Some(_) => {}
                None => rows[i] = Some(candidate.to_vec()),
            }
        }
    }

    let mut g = Matrix::zeros(field, n, n);
    for (i, row) in rows.into_iter().enumerate() {
        let row = row.ok_or_else(|| inconsistent("a row of g is not determined"))?;
        for (c, v) in row.into_iter().enumerate() {
            g.set(i, c, v);
        }
    }
    let in_group = g.is_upper_unitriangular()
        && (0..n).all(|i| (i + 1..(i + k + 1).min(n)).all(|c| g.get(i, c) == 0));
    if !in_group {
        return Err(inconsistent("recovered matrix is not in the derived subgroup"));
    }
    for (j, w) in members.iter().enumerate() {
        let sent = Subspace::from_rows(&g.top_rows(j + 1));
        let ok = if w.dim() == j + 1 { *w == sent } else { w.is_subspace_of(&sent) };
        if !ok {
            return Err(inconsistent("received space does not fit the recovered matrix"));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::code_derived;
    use crate::flags::{flag_from_matrix, FlagType};

    fn erase(flag: &Flag, steps: &[usize]) -> StutteringFlag {
        let f = flag.field();
        let n = flag.ambient();
        let mut members = Vec::new();
        for (j, w) in flag.members().iter().enumerate() {
            let kept = if steps.contains(&(j + 1)) {
                members.last().cloned().unwrap_or_else(|| Subspace::zero(f, n))
            } else {
                w.clone()
            };
            members.push(kept);
        }
        StutteringFlag::new(members).unwrap()
    }

    #[test]
    fn min_distance_decoding_of_exact_codewords() {
        let f = Field::prime(2).unwrap();
        let code = code_derived(&f, 4, 1).unwrap();
        for (i, c) in code.codebook().iter().enumerate() {
            let r = decode_min_distance(&code, &StutteringFlag::from(c)).unwrap();
            assert_eq!((r.index, r.error_count, r.unique), (i, 0, true));
        }
    }

    #[test]
    fn ties_are_reported() {
        // two codewords at Grassmann distance 2 with a flag midway between
        let f = Field::prime(2).unwrap();
        let code = code_derived(&f, 4, 1).unwrap();
        let full = FlagType::full(4);
        let a = &code.codebook()[0];
        let b = &code.codebook()[1];
        let mut found = false;
        for data in 0u32..(1 << 16) {
            let m = Matrix::from_vec(&f, 4, 4, (0..16).map(|i| (data >> i) & 1).collect()).unwrap();
            if m.rank() < 4 {
                continue;
            }
            let g = StutteringFlag::from(flag_from_matrix(&m, &full).unwrap());
            let ea = error_count(a, &g).unwrap().total;
            let eb = error_count(b, &g).unwrap().total;
            if ea == eb && ea > 0 {
                let r = decode_min_distance(&code, &g).unwrap();
                if r.error_count == ea {
                    assert!(!r.unique);
                    found = true;
                    break;
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn erasure_round_trips() {
        let f = Field::prime(2).unwrap();
        let code = code_derived(&f, 4, 1).unwrap();
        for (g, flag) in code.generators().iter().zip(code.codebook()) {
            assert_eq!(&decode_derived_erasure(&f, 4, 1, &StutteringFlag::from(flag)).unwrap(), g);
        }
        let code = code_derived(&f, 5, 2).unwrap();
        for (g, flag) in code.generators().iter().zip(code.codebook()) {
            let r = erase(flag, &[2, 3]);
            assert_eq!(&decode_derived_erasure(&f, 5, 2, &r).unwrap(), g);
        }
        let code = code_derived(&f, 4, 1).unwrap();
        let r = erase(&code.codebook()[3], &[1, 2]);
        assert!(matches!(
            decode_derived_erasure(&f, 4, 1, &r),
            Err(ChannelError::RunTooLong { start: 1, length: 2, limit: 1 })
        ));
    }

    #[test]
    fn erasure_decoder_agrees_with_scan() {
        let f = Field::prime(3).unwrap();
        let code = code_derived(&f, 5, 2).unwrap();
        for flag in code.codebook() {
            for steps in [vec![], vec![1], vec![4], vec![1, 2], vec![3, 4], vec![2, 4]] {
                let r = erase(flag, &steps);
                let g = decode_derived_erasure(&f, 5, 2, &r).unwrap();
                let scan = decode_min_distance(&code, &r).unwrap();
                if scan.unique {
                    assert_eq!(&code.generators()[scan.index], &g);
                }
            }
        }
    }

    #[test]
    fn inconsistent_inputs() {
        let f = Field::prime(2).unwrap();
        // a full flag that is not in the code: lower triangular entry
        let mut m = Matrix::identity(&f, 4);
        m.set(0, 1, 1);
        let flag = flag_from_matrix(&m, &FlagType::full(4)).unwrap();
        assert!(matches!(
            decode_derived_erasure(&f, 4, 1, &StutteringFlag::from(&flag)),
            Err(ChannelError::InconsistentInput(_))
        ));
    }
}
