use crate::symgrp::{min_double_coset_rep, Permutation};

use super::{Flag, FlagError, Subspace};

/// `Σ_i (d_i − dim(W_i ∩ W'_i))` for flags of one type.
pub fn grassmann_distance(a: &Flag, b: &Flag) -> Result<usize, FlagError> {
    if a.flag_type() != b.flag_type() || a.field() != b.field() {
        return Err(FlagError::TypeMismatch);
    }
    a.members()
        .iter()
        .zip(b.members())
        .map(|(u, w)| u.distance(w))
        .sum()
}

fn chain_with_ends(flag: &Flag) -> Vec<Subspace> {
    let field = flag.field();
    let n = flag.ambient();
    let mut chain = Vec::with_capacity(n + 1);
    chain.push(Subspace::zero(field, n));
    chain.extend(flag.members().iter().cloned());
    chain.push(Subspace::full(field, n));
    chain
}

/// Relative position `d_W(D, D')` of two full flags.
///
/// With `V_0 = 0` and `V_n = V` on both sides, `π(j) = i` exactly where the
/// mixed second difference of `dim(V_i ∩ V'_j)` equals one. Orientation:
/// `relative_position(Δ_π, Δ_σ) = σ π⁻¹` in the left-to-right product of
/// [`Permutation`].
pub fn relative_position(a: &Flag, b: &Flag) -> Result<Permutation, FlagError> {
    if !a.is_full() || !b.is_full() {
        return Err(FlagError::NotFullFlag);
    }
    if a.flag_type() != b.flag_type() || a.field() != b.field() {
        return Err(FlagError::TypeMismatch);
    }
    let n = a.ambient();
    let va = chain_with_ends(a);
    let vb = chain_with_ends(b);
    let mut inc = vec![vec![0usize; n + 1]; n + 1];
    for i in 0..=n {
        for j in 0..=n {
            inc[i][j] = if i == 0 || j == 0 {
                0
            } else if i == n {
                j
            } else if j == n {
                i
            } else {
                va[i].intersection_dim(&vb[j])?
            };
        }
    }
    let mut images = vec![usize::MAX; n];
    for j in 1..=n {
        for i in 1..=n {
            let jump = inc[i][j] + inc[i - 1][j - 1] - inc[i - 1][j] - inc[i][j - 1];
            if jump == 1 {
                images[j - 1] = i - 1;
            }
        }
    }
    Ok(Permutation::from_images(images).expect("incidence jumps form a permutation"))
}

/// Gallery distance of full flags, as the length of their relative position.
pub fn gallery_distance(a: &Flag, b: &Flag) -> Result<usize, FlagError> {
    Ok(relative_position(a, b)?.length())
}

/// Relative position of two flags of one (possibly partial) type, as the
/// minimal representative of the Young double coset of `T'`. Both flags
/// are first refined to full flags with [`Flag::refine`].
pub fn partial_relative_position(a: &Flag, b: &Flag) -> Result<Permutation, FlagError> {
    if a.flag_type() != b.flag_type() || a.field() != b.field() {
        return Err(FlagError::TypeMismatch);
    }
    let pi = relative_position(&a.refine(), &b.refine())?;
    Ok(min_double_coset_rep(&pi, &a.flag_type().composition())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flags::{apartment_flag, flag_from_matrix, standard_flag, FlagType};
    use crate::gfq::{Field, Matrix};
    use crate::rng::XorShift64Star;
    use crate::symgrp::max_depth;

    fn random_invertible(f: &Field, n: usize, rng: &mut XorShift64Star) -> Matrix {
        loop {
            let data = (0..n * n).map(|_| rng.below(f.order() as u64) as u32).collect();
            let m = Matrix::from_vec(f, n, n, data).unwrap();
            if m.rank() == n {
                return m;
            }
        }
    }

    fn random_lower(f: &Field, n: usize, rng: &mut XorShift64Star) -> Matrix {
        let mut m = Matrix::zeros(f, n, n);
        for r in 0..n {
            for c in 0..=r {
                let v = if r == c {
                    1 + rng.below(f.order() as u64 - 1) as u32
                } else {
                    rng.below(f.order() as u64) as u32
                };
                m.set(r, c, v);
            }
        }
        m
    }

    #[test]
    fn apartment_orientation_exhaustive() {
        let f = Field::prime(2).unwrap();
        for n in 2..=4 {
            let perms: Vec<_> = Permutation::all(n).collect();
            for pi in &perms {
                let dp = apartment_flag(&f, pi);
                for sigma in &perms {
                    let ds = apartment_flag(&f, sigma);
                    assert_eq!(relative_position(&dp, &ds).unwrap(), sigma * &pi.inverse());
                }
            }
        }
    }

    #[test]
    fn standard_and_apartment_basics() {
        let f = Field::prime(2).unwrap();
        let full = FlagType::full(4);
        let d0 = standard_flag(&f, &full);
        assert_eq!(apartment_flag(&f, &Permutation::identity(4)), d0);
        assert_eq!(flag_from_matrix(&Matrix::identity(&f, 4), &full).unwrap(), d0);
        let t13 = FlagType::new(4, vec![1, 3]).unwrap();
        let dims: Vec<_> = standard_flag(&f, &t13).members().iter().map(|w| w.dim()).collect();
        assert_eq!(dims, vec![1, 3]);
        let single = standard_flag(&f, &FlagType::new(4, vec![2]).unwrap());
        assert_eq!(single.members()[0], Subspace::coordinate(&f, 4, 2));

        let all: std::collections::HashSet<_> = Permutation::all(3).map(|p| apartment_flag(&f, &p)).collect();
        assert_eq!(all.len(), 6);
        assert!(matches!(
            flag_from_matrix(&Matrix::zeros(&f, 4, 4), &full),
            Err(FlagError::SingularMatrix)
        ));
    }

    #[test]
    fn lower_triangular_matrices_stabilize_standard_flags() {
        let mut rng = XorShift64Star::new(4);
        for p in [2, 3] {
            let f = Field::prime(p).unwrap();
            for dims in [vec![1, 2, 3], vec![2], vec![1, 3]] {
                let t = FlagType::new(4, dims).unwrap();
                for _ in 0..10 {
                    let b = random_lower(&f, 4, &mut rng);
                    assert_eq!(flag_from_matrix(&b, &t).unwrap(), standard_flag(&f, &t));
                    let g = random_invertible(&f, 4, &mut rng);
                    let bg = b.mul(&g).unwrap();
                    assert_eq!(flag_from_matrix(&bg, &t).unwrap(), flag_from_matrix(&g, &t).unwrap());
                }
            }
        }
    }

    #[test]
    fn grassmann_distance_examples() {
        let f = Field::prime(2).unwrap();
        let d0 = standard_flag(&f, &FlagType::full(4));
        let dw = apartment_flag(&f, &Permutation::longest(4));
        assert_eq!(grassmann_distance(&d0, &d0).unwrap(), 0);
        assert_eq!(grassmann_distance(&d0, &dw).unwrap(), 4);

        // two 3-spaces in GF(2)^5 meeting in a line
        let t = FlagType::new(5, vec![3]).unwrap();
        let a = Matrix::from_rows(&f, 5, &[[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0]]).unwrap();
        let b = Matrix::from_rows(&f, 5, &[[1, 0, 0, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]).unwrap();
        let complete = |m: &Matrix| {
            let mut basis = m.clone();
            for j in 0..5 {
                let e = Matrix::identity(&f, 5).top_rows(j + 1).block(j..j + 1, 0..5);
                let s = basis.vstack(&e).unwrap();
                if s.rank() > basis.rows() {
                    basis = s;
                }
            }
            basis
        };
        let la = flag_from_matrix(&complete(&a), &t).unwrap();
        let lb = flag_from_matrix(&complete(&b), &t).unwrap();
        assert_eq!(grassmann_distance(&la, &lb).unwrap(), 3 - 1);

        assert_eq!(grassmann_distance(&la, &d0).unwrap_err(), FlagError::TypeMismatch);
    }

    #[test]
    fn distances_factor_through_relative_position() {
        let mut rng = XorShift64Star::new(6);
        for p in [2, 3] {
            let f = Field::prime(p).unwrap();
            for n in 2..=5 {
                let full = FlagType::full(n);
                for _ in 0..40 {
                    let a = flag_from_matrix(&random_invertible(&f, n, &mut rng), &full).unwrap();
                    let b = flag_from_matrix(&random_invertible(&f, n, &mut rng), &full).unwrap();
                    let pi = relative_position(&a, &b).unwrap();
                    let e = grassmann_distance(&a, &b).unwrap();
                    assert_eq!(e, pi.depth());
                    assert_eq!(gallery_distance(&a, &b).unwrap(), pi.length());
                    assert_eq!(relative_position(&b, &a).unwrap(), pi.inverse());
                    assert!(e <= max_depth(n));
                    if a != b {
                        let dg = pi.length();
                        assert!(2 * e > dg && dg >= e);
                    }
                }
            }
        }
    }

    #[test]
    fn gl_invariance() {
        let mut rng = XorShift64Star::new(8);
        for p in [2, 3] {
            let f = Field::prime(p).unwrap();
            for dims in [vec![1, 2, 3, 4], vec![2], vec![1, 3]] {
                let t = FlagType::new(5, dims).unwrap();
                for _ in 0..20 {
                    let a = flag_from_matrix(&random_invertible(&f, 5, &mut rng), &t).unwrap();
                    let b = flag_from_matrix(&random_invertible(&f, 5, &mut rng), &t).unwrap();
                    let g = random_invertible(&f, 5, &mut rng);
                    assert_eq!(
                        grassmann_distance(&a.act(&g).unwrap(), &b.act(&g).unwrap()).unwrap(),
                        grassmann_distance(&a, &b).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn relative_position_errors() {
        let f = Field::prime(2).unwrap();
        let partial = standard_flag(&f, &FlagType::new(3, vec![1]).unwrap());
        let full = standard_flag(&f, &FlagType::full(3));
        assert_eq!(relative_position(&partial, &full).unwrap_err(), FlagError::NotFullFlag);
        let other = standard_flag(&f, &FlagType::full(4));
        assert_eq!(relative_position(&full, &other).unwrap_err(), FlagError::TypeMismatch);
    }

    #[test]
    fn partial_position_is_a_double_coset_invariant() {
        let mut rng = XorShift64Star::new(10);
        let f = Field::prime(2).unwrap();
        let t = FlagType::new(4, vec![2]).unwrap();
        let d = standard_flag(&f, &t);
        for _ in 0..30 {
            let g = random_invertible(&f, 4, &mut rng);
            let l = flag_from_matrix(&g, &t).unwrap();
            let pos = partial_relative_position(&d, &l).unwrap();
            // the representative is unchanged by moving both flags together
            let h = random_invertible(&f, 4, &mut rng);
            let moved = partial_relative_position(&d.act(&h).unwrap(), &l.act(&h).unwrap()).unwrap();
            assert_eq!(pos, moved);
            // and for type {k} it determines the distance: k - dim meet
            let full_pos = relative_position(&d.refine(), &l.refine()).unwrap();
            assert_eq!(
                crate::symgrp::min_double_coset_rep(&full_pos, &t.composition()).unwrap(),
                pos
            );
            let meet = 2 - grassmann_distance(&d, &l).unwrap();
            let in_first_block = (0..2).filter(|&i| pos.apply(i) < 2).count();
            assert_eq!(in_first_block, meet);
        }
    }
}
