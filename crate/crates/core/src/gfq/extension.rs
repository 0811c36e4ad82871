use super::{poly, Field, Matrix, MatrixError};

/// GF(q^k) presented over its subfield GF(q) as `GF(q)[x] / (modulus)`.
///
/// Elements are coefficient vectors of length `k` (polynomial basis
/// `1, x, ..., x^(k-1)`), each coefficient a GF(q) encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionField {
    base: Field,
    degree: usize,
    modulus: Vec<u32>,
}

pub type ExtElement = Vec<u32>;

impl ExtensionField {
    /// Extension of degree `k` with the smallest irreducible modulus over the base.
    pub fn new(base: &Field, k: usize) -> Self {
        assert!(k >= 1, "extension degree must be positive");
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            poly::smallest_irreducible(base, k)
        };
        ExtensionField {
            base: base.clone(),
            degree: k,
            modulus,
        }
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// q^k as u64.
    pub fn order(&self) -> u64 {
        (self.base.order() as u64).pow(self.degree as u32)
    }

    pub fn zero(&self) -> ExtElement {
        vec![0; self.degree]
    }

    pub fn one(&self) -> ExtElement {
        let mut e = self.zero();
        e[0] = 1;
        e
    }

    /// The element `x^i` of the polynomial basis.
    pub fn basis_element(&self, i: usize) -> ExtElement {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    /// Element whose coefficients are the base-q digits of `index`.
    pub fn from_index(&self, mut index: u64) -> ExtElement {
        let q = self.base.order() as u64;
        (0..self.degree)
            .map(|_| {
                let d = (index % q) as u32;
                index /= q;
                d
            })
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = ExtElement> + '_ {
        (0..self.order()).map(|i| self.from_index(i))
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> ExtElement {
        a.iter().zip(b).map(|(&x, &y)| self.base.add(x, y)).collect()
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> ExtElement {
        let prod = poly::mul(&self.base, a, b);
        let mut r = poly::rem(&self.base, &prod, &self.modulus);
        r.resize(self.degree, 0);
        r
    }

    pub fn pow(&self, a: &[u32], mut k: u64) -> ExtElement {
        let mut result = self.one();
        let mut base = a.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        result
    }

    /// `a^(q^i)`.
    pub fn frobenius(&self, a: &[u32], i: usize) -> ExtElement {
        let q = self.base.order() as u64;
        (0..i).fold(a.to_vec(), |acc, _| self.pow(&acc, q))
    }

    /// Matrix of multiplication by `alpha` in the given GF(q)-basis, in the
    /// row-vector convention: row `i` holds the coordinates of
    /// `alpha * basis[i]`.
    pub fn regular_representation(&self, alpha: &[u32], basis: &[ExtElement]) -> Result<Matrix, MatrixError> {
        let k = self.degree;
        if basis.len() != k {
            return Err(MatrixError::DependentBasis);
        }
        let bmat = Matrix::from_rows(&self.base, k, basis)?;
        let binv = bmat.inverse().map_err(|_| MatrixError::DependentBasis)?;
        let rows: Vec<Vec<u32>> = basis
            .iter()
            .map(|b| binv.vec_mul(&self.mul(alpha, b)))
            .collect::<Result<_, _>>()?;
        Matrix::from_rows(&self.base, k, &rows)
    }

    pub fn polynomial_basis(&self) -> Vec<ExtElement> {
        (0..self.degree).map(|i| self.basis_element(i)).collect()
    }
}
