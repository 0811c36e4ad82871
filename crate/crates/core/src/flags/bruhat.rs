use crate::gfq::{Field, Matrix};
use crate::symgrp::Permutation;

use super::{flag_from_matrix, permutation_matrix, Flag, FlagError, FlagType};

/// `A = lower · π̃ · unipotent` with `lower` invertible lower triangular and
/// `unipotent ∈ U_π`: lower unitriangular, with row `π(i)` supported
/// (off the diagonal) only on columns `π(k)` with `k > i` and `π(k) < π(i)`.
/// Such an expression is unique, and `U_π` has `q^{ℓ(π)}` elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruhatDecomposition {
    pub lower: Matrix,
    pub perm: Permutation,
    pub unipotent: Matrix,
}

impl BruhatDecomposition {
    pub fn reconstruct(&self) -> Matrix {
        let field = self.lower.field();
        self.lower
            .mul(&permutation_matrix(field, &self.perm))
            .and_then(|m| m.mul(&self.unipotent))
            .expect("square factors of equal size")
    }
}

fn rightmost_nonzero(v: &[u32]) -> Option<usize> {
    v.iter().rposition(|&x| x != 0)
}

/// Gauss–Bruhat decomposition of an invertible matrix relative to the
/// lower-triangular Borel subgroup (the stabilizer of `Δ_0`).
///
/// Rows are reduced top to bottom against the rightmost nonzero entry, which
/// is the pivot notion matching `V_i = ⟨e_1..e_i⟩`; then each normalized
/// row is cleared at the pivot columns of earlier rows.
pub fn bruhat_decompose(a: &Matrix) -> Result<BruhatDecomposition, FlagError> {
    if !a.is_square() {
        return Err(FlagError::AmbientMismatch);
    }
    let field = a.field().clone();
    let n = a.rows();
    let mut lower = Matrix::zeros(&field, n, n);
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut pivot_row: Vec<Option<usize>> = vec![None; n];
    let mut images: Vec<usize> = Vec::with_capacity(n);

    let axpy = |dst: &mut Vec<u32>, src: &[u32], factor: u32| {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = field.sub(*d, field.mul(factor, s));
        }
    };

    for i in 0..n {
        let mut r = a.row(i).to_vec();
        let c = loop {
            let c = rightmost_nonzero(&r).ok_or(FlagError::SingularMatrix)?;
            match pivot_row[c] {
                Some(j) => {
                    let factor = r[c];
                    axpy(&mut r, &rows[j][..], factor);
                    lower.set(i, j, field.add(lower.get(i, j), factor));
                }
                None => break c,
            }
        };
        let lead = r[c];
        let inv = field.inv(lead).expect("nonzero");
        for v in &mut r {
            *v = field.mul(inv, *v);
        }
        lower.set(i, i, lead);
        // clear earlier pivot columns left of c, right to left
        let mut earlier: Vec<usize> = (0..i).filter(|&j| images[j] < c).collect();
        earlier.sort_by_key(|&j| std::cmp::Reverse(images[j]));
        for j in earlier {
            let factor = r[images[j]];
            if factor != 0 {
                axpy(&mut r, &rows[j][..], factor);
                // row_i(A) = lead·(r_new + factor·w_j) + ...
                lower.set(i, j, field.add(lower.get(i, j), field.mul(lead, factor)));
            }
        }
        pivot_row[c] = Some(i);
        images.push(c);
        rows.push(r);
    }

    let perm = Permutation::from_images(images).expect("distinct pivots");
    let mut unipotent = Matrix::zeros(&field, n, n);
    for (i, r) in rows.iter().enumerate() {
        for (c, &v) in r.iter().enumerate() {
            unipotent.set(perm.apply(i), c, v);
        }
    }
    Ok(BruhatDecomposition {
        lower,
        perm,
        unipotent,
    })
}

/// Largest circle [`circle_enumerate`] will materialize.
pub const CIRCLE_LIMIT: u64 = 100_000;

/// All full flags at relative position `π` from `Δ_0`, i.e. `Δ_π U_π`.
///
/// Row `i` of the generating matrix is `e_{π(i)}` plus free entries at the
/// columns `π(k)`, `k > i`, `π(k) < π(i)`; there are `ℓ(π)` free entries.
pub fn circle_enumerate(field: &Field, pi: &Permutation) -> Result<Vec<Flag>, FlagError> {
    let n = pi.degree();
    let q = field.order() as u64;
    let count = q
        .checked_pow(pi.length() as u32)
        .filter(|&c| c <= CIRCLE_LIMIT)
        .ok_or(FlagError::TooLarge)?;
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| {
            (i + 1..n)
                .filter(move |&k| pi.apply(k) < pi.apply(i))
                .map(move |k| (i, pi.apply(k)))
        })
        .collect();
    let full = FlagType::full(n);
    let base = permutation_matrix(field, pi);
    let mut flags = Vec::with_capacity(count as usize);
    for index in 0..count {
        let mut g = base.clone();
        let mut rest = index;
        for &(row, col) in &free {
            g.set(row, col, (rest % q) as u32);
            rest /= q;
        }
        flags.push(flag_from_matrix(&g, &full)?);
    }
    Ok(flags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flags::{relative_position, standard_flag};
    use crate::rng::XorShift64Star;
    use std::collections::{HashMap, HashSet};

    fn random_invertible(f: &Field, n: usize, rng: &mut XorShift64Star) -> Matrix {
        loop {
            let data = (0..n * n).map(|_| rng.below(f.order() as u64) as u32).collect();
            let m = Matrix::from_vec(f, n, n, data).unwrap();
            if m.rank() == n {
                return m;
            }
        }
    }

    fn in_u_pi(u: &Matrix, pi: &Permutation) -> bool {
        let n = pi.degree();
        if !u.is_lower_unitriangular() {
            return false;
        }
        let inv = pi.inverse();
        (0..n).all(|r| {
            let i = inv.apply(r);
            (0..r).all(|c| {
                let allowed = inv.apply(c) > i;
                allowed || u.get(r, c) == 0
            })
        })
    }

    #[test]
    fn trivial_cases() {
        let f = Field::prime(3).unwrap();
        let mut l = Matrix::identity(&f, 3);
        l.set(1, 0, 2);
        l.set(2, 1, 1);
        l.set(2, 2, 2);
        let d = bruhat_decompose(&l).unwrap();
        assert!(d.perm.is_identity());
        assert_eq!(d.unipotent, Matrix::identity(&f, 3));
        assert_eq!(d.lower, l);

        for pi in Permutation::all(4) {
            let d = bruhat_decompose(&permutation_matrix(&f, &pi)).unwrap();
            assert_eq!(d.lower, Matrix::identity(&f, 4));
            assert_eq!(d.perm, pi);
            assert_eq!(d.unipotent, Matrix::identity(&f, 4));
        }
        assert_eq!(
            bruhat_decompose(&Matrix::zeros(&f, 2, 2)).unwrap_err(),
            FlagError::SingularMatrix
        );
    }

    #[test]
    fn random_reconstruction() {
        let mut rng = XorShift64Star::new(12);
        for p in [2, 3] {
            let f = Field::prime(p).unwrap();
            for n in 1..=5 {
                for _ in 0..50 {
                    let a = random_invertible(&f, n, &mut rng);
                    let d = bruhat_decompose(&a).unwrap();
                    assert_eq!(d.reconstruct(), a);
                    assert!(d.lower.is_lower_triangular());
                    assert!(in_u_pi(&d.unipotent, &d.perm), "{d:?}");
                    if n >= 2 {
                        let d0 = standard_flag(&f, &FlagType::full(n));
                        let fa = flag_from_matrix(&a, &FlagType::full(n)).unwrap();
                        assert_eq!(relative_position(&d0, &fa).unwrap(), d.perm);
                    }
                }
            }
        }
    }

    #[test]
    fn decomposition_is_unique_exhaustive_gl3_gf2() {
        // every (b, π, u) triple with u in U_π yields a distinct matrix and
        // together they cover GL_3(GF(2)), which has 168 elements
        let f = Field::prime(2).unwrap();
        let mut seen = HashSet::new();
        for data in 0u32..512 {
            let m = Matrix::from_vec(&f, 3, 3, (0..9).map(|i| (data >> i) & 1).collect()).unwrap();
            if m.rank() == 3 {
                let d = bruhat_decompose(&m).unwrap();
                assert!(seen.insert((d.lower.clone(), d.perm.clone(), d.unipotent.clone())));
            }
        }
        assert_eq!(seen.len(), 168);
    }

    #[test]
    fn circle_sizes_match_exhaustive_enumeration() {
        for p in [2, 3] {
            let f = Field::prime(p).unwrap();
            let full = FlagType::full(3);
            let d0 = standard_flag(&f, &full);
            // all full flags of GF(p)^3 from all invertible matrices
            let mut by_position: HashMap<Permutation, HashSet<Flag>> = HashMap::new();
            let q = p as u64;
            for index in 0..q.pow(9) {
                let mut rest = index;
                let data = (0..9)
                    .map(|_| {
                        let v = (rest % q) as u32;
                        rest /= q;
                        v
                    })
                    .collect();
                let g = Matrix::from_vec(&f, 3, 3, data).unwrap();
                if g.rank() < 3 {
                    continue;
                }
                let flag = flag_from_matrix(&g, &full).unwrap();
                by_position
                    .entry(relative_position(&d0, &flag).unwrap())
                    .or_default()
                    .insert(flag);
            }
            let total: usize = by_position.values().map(HashSet::len).sum();
            assert_eq!(total as u64, (1 + q) * (1 + q + q * q));
            for pi in Permutation::all(3) {
                let circle: HashSet<_> = circle_enumerate(&f, &pi).unwrap().into_iter().collect();
                assert_eq!(circle.len() as u64, q.pow(pi.length() as u32));
                assert_eq!(&circle, &by_position[&pi]);
            }
        }
    }

    #[test]
    fn circle_limits() {
        let f = Field::prime(2).unwrap();
        assert_eq!(circle_enumerate(&f, &Permutation::identity(3)).unwrap().len(), 1);
        assert_eq!(circle_enumerate(&f, &Permutation::longest(3)).unwrap().len(), 8);
        assert_eq!(
            circle_enumerate(&f, &Permutation::longest(8)).unwrap_err(),
            FlagError::TooLarge
        );
    }
}
