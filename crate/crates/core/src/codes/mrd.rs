use crate::gfq::{ExtensionField, Field, Matrix};

use super::{CodeError, ENUMERATION_LIMIT};

/// How a rank-metric code was generated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MrdGenerator {
    /// The image of GF(q^k) under its regular representation.
    FieldRepresentation { degree: usize },
    /// Linearized polynomials of q-degree below `kappa` evaluated at the
    /// first `length` elements of the polynomial basis of GF(q^m).
    Gabidulin { extension_degree: usize, length: usize, kappa: usize },
    /// The zero code.
    Zero,
    /// Another code with zero columns appended on the right.
    Padded { inner: Box<MrdGenerator>, extra_columns: usize },
}

/// A GF(q)-linear code of `rows × cols` matrices, given by a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MrdCode {
    field: Field,
    rows: usize,
    cols: usize,
    generator: MrdGenerator,
    basis: Vec<Matrix>,
    designed_distance: usize,
}

impl MrdCode {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn generator(&self) -> &MrdGenerator {
        &self.generator
    }

    /// GF(q)-basis of the code.
    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Minimum rank the construction guarantees for nonzero codewords
    /// (0 for the zero code).
    pub fn designed_distance(&self) -> usize {
        self.designed_distance
    }

    pub fn size(&self) -> Option<u64> {
        (self.field.order() as u64).checked_pow(self.dimension() as u32)
    }

    /// Codeword with coordinates given by the base-q digits of `index`.
    pub fn codeword(&self, mut index: u64) -> Matrix {
        let q = self.field.order() as u64;
        let mut c = Matrix::zeros(&self.field, self.rows, self.cols);
        for b in &self.basis {
            let coeff = (index % q) as u32;
            index /= q;
            if coeff != 0 {
                c = c.add(&b.scale(coeff)).expect("same shape");
            }
        }
        c
    }

    /// All `q^dim` codewords; index 0 is the zero matrix.
    pub fn codewords(&self) -> Result<Vec<Matrix>, CodeError> {
        let size = self.size().filter(|&s| s <= ENUMERATION_LIMIT).ok_or(CodeError::TooLarge)?;
        // grow one basis element at a time so that position i holds codeword(i)
        let mut words = Vec::with_capacity(size as usize);
        words.push(Matrix::zeros(&self.field, self.rows, self.cols));
        for b in &self.basis {
            let layer = words.len();
            for s in 1..self.field.order() {
                let step = b.scale(s);
                for w in 0..layer {
                    let next = words[w].add(&step).expect("same shape");
                    words.push(next);
                }
            }
        }
        Ok(words)
    }

    /// Exhaustive minimum rank over nonzero codewords.
    pub fn min_rank(&self) -> Result<Option<usize>, CodeError> {
        Ok(self.codewords()?.iter().skip(1).map(Matrix::rank).min())
    }

    pub fn zero(field: &Field, rows: usize, cols: usize) -> Self {
        MrdCode {
            field: field.clone(),
            rows,
            cols,
            generator: MrdGenerator::Zero,
            basis: Vec::new(),
            designed_distance: 0,
        }
    }

    /// Appends `extra` zero columns to every codeword. Ranks are unchanged.
    pub fn pad_columns(&self, extra: usize) -> Self {
        let basis = self
            .basis
            .iter()
            .map(|b| b.hstack(&Matrix::zeros(&self.field, self.rows, extra)).expect("same field"))
            .collect();
        MrdCode {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols + extra,
            generator: MrdGenerator::Padded {
                inner: Box::new(self.generator.clone()),
                extra_columns: extra,
            },
            basis,
            designed_distance: self.designed_distance,
        }
    }
}

/// Square `k × k` code of dimension `k` in which every nonzero codeword
/// has full rank: the regular representation of GF(q^k) in its polynomial
/// basis.
pub fn mrd_field_rep(field: &Field, k: usize) -> Result<MrdCode, CodeError> {
    if k == 0 {
        return Err(CodeError::ParameterOutOfRange("k must be positive".into()));
    }
    let size = (field.order() as u64).checked_pow(k as u32);
    if size.map_or(true, |s| s > ENUMERATION_LIMIT) {
        return Err(CodeError::TooLarge);
    }
    let ext = ExtensionField::new(field, k);
    let poly_basis = ext.polynomial_basis();
    let basis = poly_basis
        .iter()
        .map(|alpha| ext.regular_representation(alpha, &poly_basis))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MrdCode {
        field: field.clone(),
        rows: k,
        cols: k,
        generator: MrdGenerator::FieldRepresentation { degree: k },
        basis,
        designed_distance: k,
    })
}

/// Gabidulin code: `m × length` matrices whose column `c` holds the
/// coordinates of `f(x^c)` for a linearized polynomial
/// `f(z) = Σ_{i<κ} f_i z^{q^i}` over GF(q^m). Dimension `m·κ`, minimum
/// rank distance `length − κ + 1`.
pub fn mrd_gabidulin(field: &Field, m: usize, length: usize, kappa: usize) -> Result<MrdCode, CodeError> {
    if !(1 <= kappa && kappa <= length && length <= m) {
        return Err(CodeError::ParameterOutOfRange(format!(
            "need 1 <= kappa <= length <= m, got kappa={kappa} length={length} m={m}"
        )));
    }
    let ext = ExtensionField::new(field, m);
    let points: Vec<_> = (0..length).map(|c| ext.basis_element(c)).collect();
    let mut basis = Vec::with_capacity(m * kappa);
    for i in 0..kappa {
        let twisted: Vec<_> = points.iter().map(|g| ext.frobenius(g, i)).collect();
        for j in 0..m {
            let coeff = ext.basis_element(j);
            let mut mat = Matrix::zeros(field, m, length);
            for (c, g) in twisted.iter().enumerate() {
                let value = ext.mul(&coeff, g);
                for (r, &v) in value.iter().enumerate() {
                    mat.set(r, c, v);
                }
            }
            basis.push(mat);
        }
    }
    Ok(MrdCode {
        field: field.clone(),
        rows: m,
        cols: length,
        generator: MrdGenerator::Gabidulin {
            extension_degree: m,
            length,
            kappa,
        },
        basis,
        designed_distance: length - kappa + 1,
    })
}
