use std::fmt;

use crate::gfq::{Field, Matrix};
use crate::symgrp::{Composition, Permutation};

use super::{FlagError, Subspace};

/// A set of dimensions `0 < d_1 < ... < d_m < n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlagType {
    n: usize,
    dims: Vec<usize>,
}

impl FlagType {
    pub fn new(n: usize, dims: Vec<usize>) -> Result<Self, FlagError> {
        let strictly_increasing = dims.windows(2).all(|w| w[0] < w[1]);
        let in_range = dims.iter().all(|&d| d >= 1 && d < n);
        if dims.is_empty() || !strictly_increasing || !in_range {
            return Err(FlagError::InvalidType(format!("T={dims:?} for n={n}")));
        }
        Ok(FlagType { n, dims })
    }

    /// `{1, ..., n−1}`.
    pub fn full(n: usize) -> Self {
        assert!(n >= 2, "full flags need n >= 2");
        FlagType {
            n,
            dims: (1..n).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dims.len() + 1 == self.n
    }

    /// Block sizes `(k_1, ..., k_{m+1})` with `k_1 = d_1`.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut prev = 0;
        let mut parts: Vec<usize> = self
            .dims
            .iter()
            .map(|&d| {
                let k = d - prev;
                prev = d;
                k
            })
            .collect();
        parts.push(self.n - prev);
        parts
    }

    pub fn composition(&self) -> Composition {
        Composition::new(self.block_sizes()).expect("valid types have positive parts")
    }

    /// `d1,d2,...`
    pub fn dims_text(&self) -> String {
        self.dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn parse_dims(n: usize, text: &str) -> Result<Self, FlagError> {
        let dims = text
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| FlagError::Parse(format!("bad type {text:?}")))?;
        FlagType::new(n, dims)
    }
}

/// A strictly nested chain `0 < W_1 < ... < W_m < V`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Flag {
    ftype: FlagType,
    members: Vec<Subspace>,
}

impl Flag {
    pub fn new(members: Vec<Subspace>) -> Result<Self, FlagError> {
        let first = members
            .first()
            .ok_or_else(|| FlagError::InvalidType("empty flag".into()))?;
        let n = first.ambient();
        let dims: Vec<usize> = members.iter().map(Subspace::dim).collect();
        let ftype = FlagType::new(n, dims)?;
        for w in members.windows(2) {
            if !w[0].is_subspace_of(&w[1]) {
                return Err(FlagError::NotNested);
            }
        }
        Ok(Flag { ftype, members })
    }

    pub fn flag_type(&self) -> &FlagType {
        &self.ftype
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn field(&self) -> &Field {
        self.members[0].field()
    }

    pub fn ambient(&self) -> usize {
        self.ftype.n
    }

    pub fn is_full(&self) -> bool {
        self.ftype.is_full()
    }

    /// `Λ g`: the image under the right action of an invertible matrix.
    pub fn act(&self, g: &Matrix) -> Result<Flag, FlagError> {
        if !g.is_square() || g.rows() != self.ambient() {
            return Err(FlagError::AmbientMismatch);
        }
        if g.rank() != g.rows() {
            return Err(FlagError::SingularMatrix);
        }
        let members = self
            .members
            .iter()
            .map(|w| w.act(g))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Flag {
            ftype: self.ftype.clone(),
            members,
        })
    }

    /// Rows `x_1, ..., x_{d_m}` such that the first `d_i` of them span
    /// `W_i`: each member's canonical rows are appended when they enlarge
    /// the span.
    pub fn adapted_basis(&self) -> Matrix {
        let field = self.field();
        let n = self.ambient();
        let mut basis = Matrix::zeros(field, 0, n);
        for w in &self.members {
            for r in w.basis().row_iter() {
                basis = extend_if_independent(&basis, r);
            }
        }
        basis
    }

    /// A full flag containing this one: the adapted basis extended by the
    /// standard vectors `e_1, e_2, ...` in order.
    pub fn refine(&self) -> Flag {
        let field = self.field();
        let n = self.ambient();
        let mut basis = self.adapted_basis();
        let id = Matrix::identity(field, n);
        for j in 0..n {
            basis = extend_if_independent(&basis, id.row(j));
        }
        flag_from_matrix(&basis, &FlagType::full(n)).expect("extended basis is invertible")
    }

    /// Header `n q T=d1,d2,...` followed by each member's canonical basis
    /// in the matrix text format.
    pub fn to_text(&self) -> String {
        write_chain(self.ambient(), self.field(), &self.ftype.dims_text(), &self.members)
    }

    pub fn parse_text(field: &Field, text: &str) -> Result<Flag, FlagError> {
        let chain = StutteringFlag::parse_text(field, text)?;
        Flag::new(chain.members)
    }
}

fn extend_if_independent(basis: &Matrix, row: &[u32]) -> Matrix {
    let candidate = Matrix::from_vec(basis.field(), 1, row.len(), row.to_vec()).expect("valid row");
    let stacked = basis.vstack(&candidate).expect("same width");
    if stacked.rank() > basis.rows() {
        stacked
    } else {
        basis.clone()
    }
}

fn write_chain(n: usize, field: &Field, dims: &str, members: &[Subspace]) -> String {
    let mut s = format!("{n} {} T={dims}\n", field.order());
    for w in members {
        s.push_str(&w.basis().to_text());
    }
    s
}

impl fmt::Debug for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.members.iter().map(|w| w.basis().row_iter().collect::<Vec<_>>())).finish()
    }
}

/// A weakly nested chain `W_1 ≤ ... ≤ W_m` (repeats allowed).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StutteringFlag {
    n: usize,
    members: Vec<Subspace>,
}

impl StutteringFlag {
    pub fn new(members: Vec<Subspace>) -> Result<Self, FlagError> {
        let n = members
            .first()
            .map(Subspace::ambient)
            .ok_or_else(|| FlagError::InvalidType("empty stuttering flag".into()))?;
        for w in &members {
            if w.ambient() != n || w.field() != members[0].field() {
                return Err(FlagError::AmbientMismatch);
            }
        }
        for w in members.windows(2) {
            if !w[0].is_subspace_of(&w[1]) {
                return Err(FlagError::NotNested);
            }
        }
        Ok(StutteringFlag { n, members })
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        self.members[0].field()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.members.iter().map(Subspace::dim).collect()
    }

    /// The flag with these members, if the nesting is strict and proper.
    pub fn to_flag(&self) -> Option<Flag> {
        Flag::new(self.members.clone()).ok()
    }

    pub fn to_text(&self) -> String {
        let dims: Vec<String> = self.dims().iter().map(|d| d.to_string()).collect();
        write_chain(self.n, self.field(), &dims.join(","), &self.members)
    }

    pub fn parse_text(field: &Field, text: &str) -> Result<StutteringFlag, FlagError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| FlagError::Parse("empty flag file".into()))?;
        let mut parts = header.split_whitespace();
        let (Some(n), Some(q), Some(t), None) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
            return Err(FlagError::Parse(format!("bad flag header {header:?}")));
        };
        let n: usize = n.parse().map_err(|_| FlagError::Parse(format!("bad n {n:?}")))?;
        let q: u32 = q.parse().map_err(|_| FlagError::Parse(format!("bad q {q:?}")))?;
        if q != field.order() {
            return Err(FlagError::Parse(format!("flag over GF({q}), expected GF({})", field.order())));
        }
        let dims_text = t
            .strip_prefix("T=")
            .ok_or_else(|| FlagError::Parse(format!("bad type field {t:?}")))?;
        let dims = dims_text
            .split(',')
            .map(|d| d.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| FlagError::Parse(format!("bad type {dims_text:?}")))?;
        let mut members = Vec::with_capacity(dims.len());
        for &d in &dims {
            let m = Matrix::parse_lines(field, &mut lines).map_err(|e| FlagError::Parse(e.to_string()))?;
            if m.cols() != n {
                return Err(FlagError::Parse(format!("member has {} columns, expected {n}", m.cols())));
            }
            let w = Subspace::from_rows(&m);
            if w.dim() != d || w.basis() != &m {
                return Err(FlagError::Parse(format!("member of declared dimension {d} is not a canonical basis")));
            }
            members.push(w);
        }
        if lines.next().is_some() {
            return Err(FlagError::Parse("trailing content after flag".into()));
        }
        StutteringFlag::new(members)
    }
}

impl From<Flag> for StutteringFlag {
    fn from(flag: Flag) -> Self {
        StutteringFlag {
            n: flag.ambient(),
            members: flag.members,
        }
    }
}

impl From<&Flag> for StutteringFlag {
    fn from(flag: &Flag) -> Self {
        flag.clone().into()
    }
}

impl fmt::Debug for StutteringFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StutteringFlag{:?}", self.dims())
    }
}

/// `Δ_T`: the members `⟨e_1, ..., e_d⟩` for `d ∈ T`.
pub fn standard_flag(field: &Field, ftype: &FlagType) -> Flag {
    let n = ftype.ambient();
    Flag {
        ftype: ftype.clone(),
        members: ftype.dims().iter().map(|&d| Subspace::coordinate(field, n, d)).collect(),
    }
}

/// `Δ_T g`: member `i` is the row space of the first `d_i` rows of `g`.
pub fn flag_from_matrix(g: &Matrix, ftype: &FlagType) -> Result<Flag, FlagError> {
    if !g.is_square() || g.rows() != ftype.ambient() {
        return Err(FlagError::AmbientMismatch);
    }
    if g.rank() != g.rows() {
        return Err(FlagError::SingularMatrix);
    }
    Ok(Flag {
        ftype: ftype.clone(),
        members: ftype.dims().iter().map(|&d| Subspace::from_rows(&g.top_rows(d))).collect(),
    })
}

/// Permutation matrix whose row `i` is `e_{π(i)}`, so that
/// `Δ_0 π̃ = Δ_π` and `(π σ)~ = π̃ σ̃`.
pub fn permutation_matrix(field: &Field, pi: &Permutation) -> Matrix {
    let n = pi.degree();
    let mut m = Matrix::zeros(field, n, n);
    for i in 0..n {
        m.set(i, pi.apply(i), 1);
    }
    m
}

/// `Δ_π`: the full flag `⟨e_{π(1)}⟩ < ⟨e_{π(1)}, e_{π(2)}⟩ < ...`.
pub fn apartment_flag(field: &Field, pi: &Permutation) -> Flag {
    flag_from_matrix(&permutation_matrix(field, pi), &FlagType::full(pi.degree())).expect("permutation matrices are invertible")
}
