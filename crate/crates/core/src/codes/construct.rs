use std::collections::HashMap;

use crate::flags::{flag_from_matrix, Flag, FlagType};
use crate::gfq::{Field, Matrix};

use super::{CodeError, MrdCode, ENUMERATION_LIMIT};

/// A set of flags of one type, each given as `Δ_T g` for a stored
/// generator matrix `g`.
#[derive(Debug, Clone)]
pub struct FlagCode {
    field: Field,
    ftype: FlagType,
    construction: String,
    dimension: usize,
    generators: Vec<Matrix>,
    codebook: Vec<Flag>,
    index: HashMap<Flag, usize>,
}

impl PartialEq for FlagCode {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.ftype == other.ftype
            && self.construction == other.construction
            && self.dimension == other.dimension
            && self.generators == other.generators
    }
}

impl Eq for FlagCode {}

impl FlagCode {
    /// Builds the codebook `{Δ_T g}` and checks that it has exactly
    /// `q^dimension` distinct members.
    pub fn new(
        field: &Field,
        ftype: FlagType,
        construction: &str,
        dimension: usize,
        generators: Vec<Matrix>,
    ) -> Result<Self, CodeError> {
        if construction.is_empty() || construction.chars().any(char::is_whitespace) {
            return Err(CodeError::ParameterOutOfRange(format!(
                "construction tag {construction:?} must be a non-empty word"
            )));
        }
        let n = ftype.ambient();
        let expected = (field.order() as u64).checked_pow(dimension as u32);
        if expected != Some(generators.len() as u64) {
            return Err(CodeError::ParameterMismatch(format!(
                "{} generators for dimension {dimension} over GF({})",
                generators.len(),
                field.order()
            )));
        }
        let mut codebook = Vec::with_capacity(generators.len());
        let mut index = HashMap::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if g.shape() != (n, n) || g.field() != field {
                return Err(CodeError::ShapeMismatch(format!(
                    "generator {i} is {}x{}, expected {n}x{n}",
                    g.rows(),
                    g.cols()
                )));
            }
            let flag = flag_from_matrix(g, &ftype)?;
            if index.insert(flag.clone(), i).is_some() {
                return Err(CodeError::DuplicateCodeword);
            }
            codebook.push(flag);
        }
        Ok(FlagCode {
            field: field.clone(),
            ftype,
            construction: construction.to_string(),
            dimension,
            generators,
            codebook,
            index,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn flag_type(&self) -> &FlagType {
        &self.ftype
    }

    pub fn ambient(&self) -> usize {
        self.ftype.ambient()
    }

    pub fn construction(&self) -> &str {
        &self.construction
    }

    /// `log_q` of the number of codewords.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn codebook(&self) -> &[Flag] {
        &self.codebook
    }

    pub fn len(&self) -> usize {
        self.codebook.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codebook.is_empty()
    }

    pub fn index_of(&self, flag: &Flag) -> Option<usize> {
        self.index.get(flag).copied()
    }
}

fn check_size(q: u32, dim: usize) -> Result<u64, CodeError> {
    (q as u64)
        .checked_pow(dim as u32)
        .filter(|&s| s <= ENUMERATION_LIMIT)
        .ok_or(CodeError::TooLarge)
}

fn unitriangular_pair(a: &Matrix, b: &Matrix) -> Matrix {
    let field = a.field();
    let (r, c) = b.shape();
    Matrix::from_blocks(&[
        vec![a.clone(), b.clone()],
        vec![Matrix::zeros(field, c, r), Matrix::identity(field, c)],
    ])
    .expect("consistent block shapes")
}

/// Lifted code of type `{k}`: the spaces spanned by `(I_k | c)`, `c ∈ C`,
/// with generators `u(c) = (I_k c; 0 I_{n−k})`.
pub fn code_lifted(c: &MrdCode, n: usize) -> Result<FlagCode, CodeError> {
    let (k, l) = c.shape();
    if k == 0 || k >= n || k + l != n {
        return Err(CodeError::ShapeMismatch(format!(
            "a {k}x{l} rank-metric code does not lift into dimension {n}"
        )));
    }
    let field = c.field();
    let identity = Matrix::identity(field, k);
    let generators = c
        .codewords()?
        .iter()
        .map(|x| unitriangular_pair(&identity, x))
        .collect();
    FlagCode::new(field, FlagType::new(n, vec![k])?, "lifted", c.dimension(), generators)
}

fn check_square_mrd(c: &MrdCode, side: usize, label: &str) -> Result<(), CodeError> {
    if c.shape() != (side, side) || c.dimension() != side || c.designed_distance() != side {
        return Err(CodeError::ParameterMismatch(format!(
            "{label} must be {side}x{side} with dimension and distance {side}, got {:?} with dimension {} and distance {}",
            c.shape(),
            c.dimension(),
            c.designed_distance()
        )));
    }
    Ok(())
}

/// `u(x, y) = (a y; 0 a)` with `a = (I_m x; 0 I_m)`.
pub fn sandwich_generator(x: &Matrix, y: &Matrix) -> Result<Matrix, CodeError> {
    let m = x.rows();
    if x.shape() != (m, m) || y.shape() != (2 * m, 2 * m) {
        return Err(CodeError::ShapeMismatch("sandwich blocks must be m x m and 2m x 2m".into()));
    }
    let field = x.field();
    let a = unitriangular_pair(&Matrix::identity(field, m), x);
    Ok(Matrix::from_blocks(&[
        vec![a.clone(), y.clone()],
        vec![Matrix::zeros(field, 2 * m, 2 * m), a],
    ])?)
}

/// Code of type `{m, 2m, 3m}` in dimension `4m` with `q^{3m}` codewords and
/// minimum distance `2m`.
pub fn code_sandwich(m: usize, cm: &MrdCode, c2m: &MrdCode) -> Result<FlagCode, CodeError> {
    if m == 0 {
        return Err(CodeError::ParameterMismatch("m must be positive".into()));
    }
    check_square_mrd(cm, m, "C_m")?;
    check_square_mrd(c2m, 2 * m, "C_2m")?;
    if cm.field() != c2m.field() {
        return Err(CodeError::ParameterMismatch("codes over different fields".into()));
    }
    let field = cm.field();
    check_size(field.order(), 3 * m)?;
    let xs = cm.codewords()?;
    let ys = c2m.codewords()?;
    let mut generators = Vec::with_capacity(xs.len() * ys.len());
    for y in &ys {
        for x in &xs {
            generators.push(sandwich_generator(x, y)?);
        }
    }
    let ftype = FlagType::new(4 * m, vec![m, 2 * m, 3 * m])?;
    FlagCode::new(field, ftype, "sandwich", 3 * m, generators)
}

/// `u(x_0) = (1 x_0; 0 1)` and `u(x_0..x_t) = (u' x_t; 0 u')` with
/// `u' = u(x_0..x_{t−1})`.
pub fn checkerboard_generator(xs: &[Matrix]) -> Result<Matrix, CodeError> {
    let (last, rest) = xs
        .split_last()
        .ok_or_else(|| CodeError::ParameterOutOfRange("need at least one block".into()))?;
    let side = 1usize << rest.len();
    if last.shape() != (side, side) {
        return Err(CodeError::ShapeMismatch(format!(
            "block {} must be {side}x{side}",
            rest.len()
        )));
    }
    let field = last.field();
    let inner = if rest.is_empty() {
        Matrix::identity(field, 1)
    } else {
        checkerboard_generator(rest)?
    };
    Ok(Matrix::from_blocks(&[
        vec![inner.clone(), last.clone()],
        vec![Matrix::zeros(field, side, side), inner],
    ])?)
}

/// Checkerboard code of full type in dimension `2^{t+1}` from square codes
/// `C_i` of side, dimension and distance `2^i`.
pub fn code_checkerboard(codes: &[MrdCode]) -> Result<FlagCode, CodeError> {
    let Some(first) = codes.first() else {
        return Err(CodeError::ParameterMismatch("need at least one code".into()));
    };
    let field = first.field();
    for (i, c) in codes.iter().enumerate() {
        check_square_mrd(c, 1 << i, &format!("C_{i}"))?;
        if c.field() != field {
            return Err(CodeError::ParameterMismatch("codes over different fields".into()));
        }
    }
    let n = 1usize << codes.len();
    let dimension = n - 1;
    let size = check_size(field.order(), dimension)?;
    let words: Vec<Vec<Matrix>> = codes.iter().map(MrdCode::codewords).collect::<Result<_, _>>()?;
    let mut generators = Vec::with_capacity(size as usize);
    let mut digits = vec![0usize; words.len()];
    for _ in 0..size {
        let xs: Vec<Matrix> = digits.iter().zip(&words).map(|(&d, w)| w[d].clone()).collect();
        generators.push(checkerboard_generator(&xs)?);
        for (d, w) in digits.iter_mut().zip(&words) {
            *d += 1;
            if *d < w.len() {
                break;
            }
            *d = 0;
        }
    }
    FlagCode::new(field, FlagType::full(n), "checkerboard", dimension, generators)
}

/// Positions `(i, j)` with `j − i ≥ k + 1`: the free entries of `D^{(k)}`.
pub(crate) fn derived_free_positions(n: usize, k: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + k + 1..n).map(move |j| (i, j)))
        .collect()
}

/// Orbit of `Δ_0` under `D^{(k)}`, the upper unitriangular matrices with
/// `g_ij = 0` for `0 < j − i ≤ k`. Full type, dimension
/// `(n−k)(n−k−1)/2`, minimum distance `k + 1`.
pub fn code_derived(field: &Field, n: usize, k: usize) -> Result<FlagCode, CodeError> {
    if n < 2 || k >= n {
        return Err(CodeError::ParameterOutOfRange(format!(
            "need n >= 2 and 0 <= k <= n-1, got n={n} k={k}"
        )));
    }
    let free = derived_free_positions(n, k);
    let q = field.order() as u64;
    let size = check_size(field.order(), free.len())?;
    let mut generators = Vec::with_capacity(size as usize);
    for index in 0..size {
        let mut g = Matrix::identity(field, n);
        let mut rest = index;
        for &(i, j) in &free {
            g.set(i, j, (rest % q) as u32);
            rest /= q;
        }
        generators.push(g);
    }
    FlagCode::new(field, FlagType::full(n), "derived", free.len(), generators)
}
