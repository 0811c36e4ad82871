use std::fmt;

use crate::gfq::{Field, Matrix};

use super::FlagError;

/// A subspace of `K^n`, stored by its canonical basis: the reduced row
/// echelon form with zero rows removed. Equality is equality of that basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    /// Row space of `m`.
    pub fn from_rows(m: &Matrix) -> Self {
        let r = m.rref();
        Subspace {
            basis: r.matrix.top_rows(r.rank),
        }
    }

    pub fn zero(field: &Field, n: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(field, 0, n),
        }
    }

    pub fn full(field: &Field, n: usize) -> Self {
        Subspace {
            basis: Matrix::identity(field, n),
        }
    }

    /// `⟨e_1, ..., e_k⟩`.
    pub fn coordinate(field: &Field, n: usize, k: usize) -> Self {
        Subspace {
            basis: Matrix::identity(field, n).top_rows(k),
        }
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical basis, `dim × ambient`.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), FlagError> {
        if self.ambient() != other.ambient() || self.field() != other.field() {
            return Err(FlagError::AmbientMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, FlagError> {
        self.check_compatible(other)?;
        let stacked = self.basis.vstack(&other.basis).expect("compatible shapes");
        Ok(Subspace::from_rows(&stacked))
    }

    /// Dimension of the sum, without canonicalizing it.
    pub fn sum_dim(&self, other: &Subspace) -> Result<usize, FlagError> {
        self.check_compatible(other)?;
        Ok(self.basis.vstack(&other.basis).expect("compatible shapes").rank())
    }

    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize, FlagError> {
        Ok(self.dim() + other.dim() - self.sum_dim(other)?)
    }

    /// Intersection and sum at once (Zassenhaus): row reduce
    /// `[[U, U], [W, 0]]`; rows with zero left half carry `U ∩ W` on the
    /// right, the others carry `U + W` on the left.
    pub fn meet_join(&self, other: &Subspace) -> Result<(Subspace, Subspace), FlagError> {
        self.check_compatible(other)?;
        let field = self.field();
        let n = self.ambient();
        let top = self.basis.hstack(&self.basis).expect("same field");
        let bottom = other
            .basis
            .hstack(&Matrix::zeros(field, other.dim(), n))
            .expect("same field");
        let r = top.vstack(&bottom).expect("same width").rref();
        let split = r.pivots.iter().take_while(|&&c| c < n).count();
        let sum = r.matrix.block(0..split, 0..n);
        let meet = r.matrix.block(split..r.rank, n..2 * n);
        Ok((Subspace::from_rows(&meet), Subspace::from_rows(&sum)))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, FlagError> {
        Ok(self.meet_join(other)?.0)
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient());
        let row = Matrix::from_vec(self.field(), 1, v.len(), v.to_vec()).expect("valid vector");
        self.basis.vstack(&row).expect("same width").rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient() == other.ambient()
            && self.field() == other.field()
            && self.dim() <= other.dim()
            && self.sum_dim(other).ok() == Some(other.dim())
    }

    /// Image under the right action `v -> v g`.
    pub fn act(&self, g: &Matrix) -> Result<Subspace, FlagError> {
        let image = self.basis.mul(g).map_err(|_| FlagError::AmbientMismatch)?;
        Ok(Subspace::from_rows(&image))
    }

    /// Grassmann distance on subspaces of equal dimension: `dim U − dim(U ∩ W)`.
    pub fn distance(&self, other: &Subspace) -> Result<usize, FlagError> {
        Ok(self.dim() - self.intersection_dim(other)?)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of {}): ", self.dim(), self.ambient())?;
        let rows: Vec<_> = self.basis.row_iter().collect();
        write!(f, "{rows:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::XorShift64Star;

    fn random_matrix(f: &Field, r: usize, c: usize, rng: &mut XorShift64Star) -> Matrix {
        let data = (0..r * c).map(|_| rng.below(f.order() as u64) as u32).collect();
        Matrix::from_vec(f, r, c, data).unwrap()
    }

    #[test]
    fn from_rows_examples() {
        let f2 = Field::prime(2).unwrap();
        let m = Matrix::identity(&f2, 4).top_rows(2);
        let s = Subspace::from_rows(&m);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.basis(), &m);

        let m = Matrix::from_rows(&f2, 2, &[[1, 1], [0, 0]]).unwrap();
        let s = Subspace::from_rows(&m);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis().row(0), &[1, 1]);

        let f3 = Field::prime(3).unwrap();
        let mut rng = XorShift64Star::new(1);
        for _ in 0..20 {
            let m = random_matrix(&f3, 3, 5, &mut rng);
            assert_eq!(Subspace::from_rows(&m).dim(), m.rank());
        }
        assert_eq!(Subspace::from_rows(&Matrix::zeros(&f3, 0, 3)).dim(), 0);
    }

    #[test]
    fn meet_join_examples() {
        let f2 = Field::prime(2).unwrap();
        let u = Subspace::coordinate(&f2, 3, 2);
        assert_eq!(u.meet_join(&u).unwrap(), (u.clone(), u.clone()));

        let a = Subspace::from_rows(&Matrix::from_rows(&f2, 2, &[[1, 0]]).unwrap());
        let b = Subspace::from_rows(&Matrix::from_rows(&f2, 2, &[[1, 1]]).unwrap());
        let (meet, join) = a.meet_join(&b).unwrap();
        assert_eq!(meet, Subspace::zero(&f2, 2));
        assert_eq!(join, Subspace::full(&f2, 2));

        let other = Subspace::zero(&f2, 3);
        assert_eq!(a.meet_join(&other).unwrap_err(), FlagError::AmbientMismatch);
    }

    #[test]
    fn grassmann_identity_and_brute_force_meet() {
        let f2 = Field::prime(2).unwrap();
        let mut rng = XorShift64Star::new(2);
        let vectors: Vec<Vec<u32>> = (0..32u32).map(|m| (0..5).map(|i| (m >> i) & 1).collect()).collect();
        for _ in 0..100 {
            let r1 = 1 + rng.below(4) as usize;
            let r2 = 1 + rng.below(4) as usize;
            let u = Subspace::from_rows(&random_matrix(&f2, r1, 5, &mut rng));
            let w = Subspace::from_rows(&random_matrix(&f2, r2, 5, &mut rng));
            let (meet, join) = u.meet_join(&w).unwrap();
            assert_eq!(meet.dim() + join.dim(), u.dim() + w.dim());
            // brute force: count vectors lying in both
            let common = vectors
                .iter()
                .filter(|v| u.contains_vector(v) && w.contains_vector(v))
                .count();
            assert_eq!(common, 1 << meet.dim());
            assert!(meet.is_subspace_of(&u) && meet.is_subspace_of(&w));
            assert!(u.is_subspace_of(&join) && w.is_subspace_of(&join));
            assert_eq!(u.intersection_dim(&w).unwrap(), meet.dim());
        }
    }
}
