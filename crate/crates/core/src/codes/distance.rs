use std::collections::HashSet;

use crate::flags::{grassmann_distance, FlagType};
use crate::gfq::Matrix;

use super::{CodeError, FlagCode};

/// How [`code_min_distance`] evaluates the minimum distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceMode {
    /// Grassmann distance over all pairs of distinct codewords.
    Pairwise,
    /// `Ē_T` of generator quotients: over the non-identity elements when the
    /// generator set is a group, otherwise over `g_j g_i⁻¹` for all pairs.
    Group,
    /// Like `Group`, but fails with [`CodeError::NotAGroup`] unless the
    /// generator set is a group.
    Subgroup,
}

fn block_bounds(t: &FlagType) -> Vec<usize> {
    let mut b = Vec::with_capacity(t.len() + 2);
    b.push(0);
    b.extend_from_slice(t.dims());
    b.push(t.ambient());
    b
}

/// `Ē_T(g) = Σ_i rank(g_i)` where `g_i` is the upper right
/// `d_i × (n − d_i)` block of a block-unitriangular `g`; this is the
/// Grassmann distance between `Δ_T` and `Δ_T g`.
pub fn ebar(g: &Matrix, t: &FlagType) -> Result<usize, CodeError> {
    let n = t.ambient();
    if g.shape() != (n, n) {
        return Err(CodeError::ShapeMismatch(format!(
            "{}x{} matrix for a flag type in dimension {n}",
            g.rows(),
            g.cols()
        )));
    }
    let bounds = block_bounds(t);
    for a in 0..bounds.len() - 1 {
        for b in 0..=a {
            let block = g.block(bounds[a]..bounds[a + 1], bounds[b]..bounds[b + 1]);
            let ok = if a == b {
                block == Matrix::identity(g.field(), block.rows())
            } else {
                block.is_zero()
            };
            if !ok {
                return Err(CodeError::ShapeMismatch(format!(
                    "matrix is not block unitriangular for type {}",
                    t.dims_text()
                )));
            }
        }
    }
    let value = t.dims().iter().map(|&d| g.block(0..d, d..n).rank()).sum();
    #[cfg(test)]
    {
        use crate::flags::{flag_from_matrix, standard_flag};
        let base = standard_flag(g.field(), t);
        let moved = flag_from_matrix(g, t).expect("unitriangular matrices are invertible");
        assert_eq!(value, grassmann_distance(&base, &moved).expect("same type"));
    }
    Ok(value)
}

/// Whether the generator set is a subgroup of `GL_n`: it contains the
/// identity and is closed under `(g, h) ↦ g h⁻¹`.
pub fn is_group(code: &FlagCode) -> bool {
    let gens = code.generators();
    let set: HashSet<&Matrix> = gens.iter().collect();
    if !set.contains(&Matrix::identity(code.field(), code.ambient())) {
        return false;
    }
    let inverses: Vec<Matrix> = gens.iter().map(|h| h.inverse().expect("invertible generator")).collect();
    gens.iter()
        .all(|g| inverses.iter().all(|hi| set.contains(&g.mul(hi).expect("square"))))
}

/// Minimum Grassmann distance between distinct codewords.
pub fn code_min_distance(code: &FlagCode, mode: DistanceMode) -> Result<usize, CodeError> {
    if code.len() < 2 {
        return Err(CodeError::EmptyDistance);
    }
    let t = code.flag_type();
    let gens = code.generators();
    let best = match mode {
        DistanceMode::Pairwise => {
            let book = code.codebook();
            let mut best = usize::MAX;
            for i in 0..book.len() {
                for j in i + 1..book.len() {
                    best = best.min(grassmann_distance(&book[i], &book[j])?);
                }
            }
            best
        }
        DistanceMode::Group | DistanceMode::Subgroup => {
            if is_group(code) {
                let mut best = usize::MAX;
                for g in gens {
                    if *g != Matrix::identity(code.field(), code.ambient()) {
                        best = best.min(ebar(g, t)?);
                    }
                }
                best
            } else if mode == DistanceMode::Subgroup {
                return Err(CodeError::NotAGroup);
            } else {
                let inverses: Vec<Matrix> = gens.iter().map(Matrix::inverse).collect::<Result<_, _>>()?;
                let mut best = usize::MAX;
                for i in 0..gens.len() {
                    for j in i + 1..gens.len() {
                        best = best.min(ebar(&gens[j].mul(&inverses[i])?, t)?);
                    }
                }
                best
            }
        }
    };
    Ok(best)
}
