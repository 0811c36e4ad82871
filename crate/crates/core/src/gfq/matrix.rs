use std::fmt;
use std::ops::Range;

use super::{Field, MatrixError};

/// Dense row-major matrix over a finite field. Entries are element encodings.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    /// Zero-based, strictly increasing.
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&v| !field.contains(v)) {
            return Err(MatrixError::EntryOutOfRange(bad));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from nested rows; all rows must have `cols` entries.
    pub fn from_rows<R: AsRef<[u32]>>(field: &Field, cols: usize, rows: &[R]) -> Result<Self, MatrixError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(MatrixError::ShapeMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::from_vec(field, rows.len(), cols, data)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        assert!(r < self.rows && c < self.cols);
        assert!(self.field.contains(v));
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u32]> {
        // chunks() panics on zero width
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_field(&self, other: &Matrix) -> Result<(), MatrixError> {
        if self.field != other.field {
            return Err(MatrixError::FieldMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(MatrixError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = f.add(*d, f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[u32]) -> Result<Vec<u32>, MatrixError> {
        if v.len() != self.rows {
            return Err(MatrixError::ShapeMismatch(format!(
                "vector of length {} times {}x{}",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let f = &self.field;
        let mut out = vec![0u32; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (d, &b) in out.iter_mut().zip(self.row(k)) {
                *d = f.add(*d, f.mul(a, b));
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Matrix, op: impl Fn(u32, u32) -> u32) -> Result<Matrix, MatrixError> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(MatrixError::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| op(a, b)).collect();
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        let f = self.field.clone();
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        let f = self.field.clone();
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    pub fn neg(&self) -> Matrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v = self.field.neg(*v);
        }
        out
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v = self.field.mul(s, *v);
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    /// Reduced row echelon form. Pivots are found scanning columns left to
    /// right and, within a column, rows top to bottom.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let cols = m.cols;
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..cols {
            if prow == m.rows {
                break;
            }
            let Some(r) = (prow..m.rows).find(|&r| m.data[r * cols + c] != 0) else {
                continue;
            };
            m.swap_rows(r, prow);
            let inv = f.inv(m.data[prow * cols + c]).expect("pivot is nonzero");
            for v in &mut m.data[prow * cols..(prow + 1) * cols] {
                *v = f.mul(inv, *v);
            }
            for r in 0..m.rows {
                if r == prow {
                    continue;
                }
                let factor = m.data[r * cols + c];
                if factor != 0 {
                    m.axpy_row(r, prow, f.neg(factor));
                }
            }
            pivots.push(c);
            prow += 1;
        }
        Rref {
            matrix: m,
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// row[dst] += factor * row[src]
    fn axpy_row(&mut self, dst: usize, src: usize, factor: u32) {
        let cols = self.cols;
        for c in 0..cols {
            let s = self.data[src * cols + c];
            if s != 0 {
                let d = &mut self.data[dst * cols + c];
                *d = self.field.add(*d, self.field.mul(factor, s));
            }
        }
    }

    pub fn inverse(&self) -> Result<Matrix, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::ShapeMismatch(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(&self.field, n))?;
        let r = aug.rref();
        if r.pivots.iter().take_while(|&&p| p < n).count() < n {
            return Err(MatrixError::SingularMatrix);
        }
        Ok(r.matrix.block(0..n, n..2 * n))
    }

    /// Submatrix at the given row and column ranges.
    pub fn block(&self, rows: Range<usize>, cols: Range<usize>) -> Matrix {
        assert!(rows.end <= self.rows && cols.end <= self.cols);
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for r in rows.clone() {
            data.extend_from_slice(&self.data[r * self.cols + cols.start..r * self.cols + cols.end]);
        }
        Matrix {
            field: self.field.clone(),
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Overwrites the block whose top-left corner is `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) -> Result<(), MatrixError> {
        self.check_field(b)?;
        if r0 + b.rows > self.rows || c0 + b.cols > self.cols {
            return Err(MatrixError::ShapeMismatch(format!(
                "{}x{} block at ({r0},{c0}) in a {}x{} matrix",
                b.rows, b.cols, self.rows, self.cols
            )));
        }
        for r in 0..b.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + b.cols].copy_from_slice(b.row(r));
        }
        Ok(())
    }

    /// Assembles a block matrix. Every block row must have uniform height
    /// and every block column uniform width.
    pub fn from_blocks(blocks: &[Vec<Matrix>]) -> Result<Matrix, MatrixError> {
        let first = blocks
            .first()
            .and_then(|r| r.first())
            .ok_or_else(|| MatrixError::ShapeMismatch("empty block layout".into()))?;
        let field = first.field.clone();
        let widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        let heights: Vec<usize> = blocks.iter().map(|r| r.first().map_or(0, |b| b.rows)).collect();
        let mut out = Matrix::zeros(&field, heights.iter().sum(), widths.iter().sum());
        let mut r0 = 0;
        for (br, row) in blocks.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(MatrixError::ShapeMismatch("ragged block layout".into()));
            }
            let mut c0 = 0;
            for (bc, b) in row.iter().enumerate() {
                if b.rows != heights[br] || b.cols != widths[bc] {
                    return Err(MatrixError::ShapeMismatch(format!(
                        "block ({br},{bc}) is {}x{}, expected {}x{}",
                        b.rows, b.cols, heights[br], widths[bc]
                    )));
                }
                out.set_block(r0, c0, b)?;
                c0 += b.cols;
            }
            r0 += heights[br];
        }
        Ok(out)
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        Matrix::from_blocks(&[vec![self.clone(), other.clone()]])
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(MatrixError::ShapeMismatch(format!(
                "stacking {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// The first `k` rows.
    pub fn top_rows(&self, k: usize) -> Matrix {
        self.block(0..k, 0..self.cols)
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == 0))
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| self.get(r, r) == 1 && (0..r).all(|c| self.get(r, c) == 0))
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| self.get(r, r) == 1 && (r + 1..self.cols).all(|c| self.get(r, c) == 0))
    }

    /// Text form: a header line `r c q`, then `r` lines of `c`
    /// space-separated encodings. Always newline-terminated.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, self.field.order());
        for row in self.row_iter() {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses one matrix in the text form from the front of `lines`,
    /// consuming exactly `r + 1` lines.
    pub fn parse_lines<'a, I>(field: &Field, lines: &mut I) -> Result<Matrix, MatrixError>
    where
        I: Iterator<Item = &'a str>,
    {
        let header = lines
            .next()
            .ok_or_else(|| MatrixError::Parse("missing matrix header".into()))?;
        let nums = parse_ints(header)?;
        let [r, c, q] = nums[..] else {
            return Err(MatrixError::Parse(format!("bad matrix header {header:?}")));
        };
        if q != field.order() as u64 {
            return Err(MatrixError::Parse(format!(
                "matrix over GF({q}) where GF({}) was expected",
                field.order()
            )));
        }
        let (r, c) = (r as usize, c as usize);
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            let line = lines
                .next()
                .ok_or_else(|| MatrixError::Parse(format!("missing row {i}")))?;
            let row = parse_ints(line)?;
            if row.len() != c {
                return Err(MatrixError::Parse(format!("row {i} has {} entries, expected {c}", row.len())));
            }
            for v in row {
                if v >= field.order() as u64 {
                    return Err(MatrixError::EntryOutOfRange(v.min(u32::MAX as u64) as u32));
                }
                data.push(v as u32);
            }
        }
        Matrix::from_vec(field, r, c, data)
    }

    pub fn parse_text(field: &Field, text: &str) -> Result<Matrix, MatrixError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let m = Self::parse_lines(field, &mut lines)?;
        if lines.next().is_some() {
            return Err(MatrixError::Parse("trailing content after matrix".into()));
        }
        Ok(m)
    }
}

fn parse_ints(line: &str) -> Result<Vec<u64>, MatrixError> {
    line.split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|_| MatrixError::Parse(format!("not an integer: {t:?}"))))
        .collect()
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over GF({})]", self.rows, self.cols, self.field.order())?;
        for row in self.row_iter() {
            write!(f, "\n  {row:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::XorShift64Star;

    fn gf(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    fn random_matrix(f: &Field, rows: usize, cols: usize, rng: &mut XorShift64Star) -> Matrix {
        let data = (0..rows * cols).map(|_| rng.below(f.order() as u64) as u32).collect();
        Matrix::from_vec(f, rows, cols, data).unwrap()
    }

    fn random_invertible(f: &Field, n: usize, rng: &mut XorShift64Star) -> Matrix {
        loop {
            let m = random_matrix(f, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    #[test]
    fn rref_examples() {
        let f = gf(2);
        let id = Matrix::identity(&f, 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!((r.rank, r.pivots), (3, vec![0, 1, 2]));

        let m = Matrix::from_rows(&f, 3, &[[1, 1, 0], [1, 1, 1]]).unwrap();
        let r = m.rref();
        assert_eq!((r.rank, r.pivots.clone()), (2, vec![0, 2]));
        assert_eq!(r.matrix, Matrix::from_rows(&f, 3, &[[1, 1, 0], [0, 0, 1]]).unwrap());

        let z = Matrix::zeros(&f, 2, 4);
        let r = z.rref();
        assert_eq!((r.matrix, r.rank, r.pivots), (z, 0, vec![]));

        let empty = Matrix::zeros(&f, 0, 3);
        assert_eq!(empty.rref().rank, 0);
        assert_eq!(Matrix::zeros(&f, 3, 0).rref().rank, 0);
    }

    #[test]
    fn rref_row_space_oracle() {
        // brute-force: the row space (as a set of vectors) is preserved
        let f = gf(2);
        let mut rng = XorShift64Star::new(7);
        for _ in 0..50 {
            let m = random_matrix(&f, 3, 4, &mut rng);
            let r = m.rref();
            let span = |mat: &Matrix| {
                let mut set = std::collections::BTreeSet::new();
                for mask in 0..(1u32 << mat.rows()) {
                    let coeffs: Vec<u32> = (0..mat.rows()).map(|i| (mask >> i) & 1).collect();
                    set.insert(mat.vec_mul(&coeffs).unwrap());
                }
                set
            };
            assert_eq!(span(&m), span(&r.matrix));
            assert_eq!(span(&m).len(), 1 << r.rank);
        }
    }

    #[test]
    fn rref_idempotent_and_subadditive() {
        let mut rng = XorShift64Star::new(11);
        for p in [2, 3, 5] {
            let f = gf(p);
            for _ in 0..40 {
                let a = random_matrix(&f, 4, 5, &mut rng);
                let b = random_matrix(&f, 4, 5, &mut rng);
                let r = a.rref();
                assert_eq!(r.matrix.rref().matrix, r.matrix);
                assert!(r.pivots.windows(2).all(|w| w[0] < w[1]));
                assert!(a.add(&b).unwrap().rank() <= a.rank() + b.rank());
            }
        }
    }

    #[test]
    fn inverse_and_identity() {
        let mut rng = XorShift64Star::new(3);
        let f = gf(3);
        for _ in 0..20 {
            let a = random_invertible(&f, 4, &mut rng);
            let inv = a.inverse().unwrap();
            assert_eq!(inv.mul(&a).unwrap(), Matrix::identity(&f, 4));
            assert_eq!(a.mul(&Matrix::identity(&f, 4)).unwrap(), a);
        }
        let singular = Matrix::from_rows(&gf(2), 2, &[[1, 1], [1, 1]]).unwrap();
        assert_eq!(singular.inverse().unwrap_err(), MatrixError::SingularMatrix);
    }

    #[test]
    fn block_triangular_inverse_formula() {
        // [[A,B],[0,A]]^-1 = [[A^-1, -A^-1 B A^-1],[0, A^-1]]
        let mut rng = XorShift64Star::new(5);
        let f = gf(3);
        for _ in 0..30 {
            let a = random_invertible(&f, 2, &mut rng);
            let b = random_matrix(&f, 2, 2, &mut rng);
            let z = Matrix::zeros(&f, 2, 2);
            let m = Matrix::from_blocks(&[vec![a.clone(), b.clone()], vec![z.clone(), a.clone()]]).unwrap();
            let ai = a.inverse().unwrap();
            let corner = ai.mul(&b).unwrap().mul(&ai).unwrap().neg();
            let expected = Matrix::from_blocks(&[vec![ai.clone(), corner], vec![z, ai]]).unwrap();
            assert_eq!(m.inverse().unwrap(), expected);
        }
    }

    #[test]
    fn shape_errors() {
        let f = gf(2);
        let a = Matrix::zeros(&f, 2, 3);
        assert!(matches!(a.mul(&a), Err(MatrixError::ShapeMismatch(_))));
        assert!(matches!(a.inverse(), Err(MatrixError::ShapeMismatch(_))));
        let g = Matrix::zeros(&gf(3), 2, 3);
        assert_eq!(a.add(&g).unwrap_err(), MatrixError::FieldMismatch);
    }

    #[test]
    fn blocks_round_trip() {
        let mut rng = XorShift64Star::new(9);
        let f = gf(5);
        let m = random_matrix(&f, 4, 5, &mut rng);
        let parts = vec![
            vec![m.block(0..1, 0..2), m.block(0..1, 2..5)],
            vec![m.block(1..4, 0..2), m.block(1..4, 2..5)],
        ];
        assert_eq!(Matrix::from_blocks(&parts).unwrap(), m);
    }

    #[test]
    fn text_format() {
        let f = gf(3);
        let m = Matrix::from_rows(&f, 3, &[[1, 2, 0], [0, 0, 1]]).unwrap();
        let text = m.to_text();
        assert_eq!(text, "2 3 3\n1 2 0\n0 0 1\n");
        assert_eq!(Matrix::parse_text(&f, &text).unwrap(), m);
        assert!(Matrix::parse_text(&f, "1 2 3\n1 3\n").is_err());
        assert!(Matrix::parse_text(&gf(2), &text).is_err());
        let z = Matrix::zeros(&f, 0, 4);
        assert_eq!(Matrix::parse_text(&f, &z.to_text()).unwrap(), z);
    }
}
