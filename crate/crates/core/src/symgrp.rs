//! Permutations of `{1..n}` and the statistics that govern flag geometry:
//! length, depth, transposition length and the sum of distances.
//!
//! Products are written left to right: `(a * b)(k) = b(a(k))`, i.e. the left
//! factor is applied first. This is the order compatible with the right
//! action of matrices on row vectors: the permutation matrix of `a * b` is
//! the matrix product of the permutation matrices of `a` and `b`.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree {n} exceeds the enumeration limit {limit}")]
    DegreeTooLarge { n: usize, limit: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
}

/// A bijection of `{1..n}` in one-line notation.
///
/// Stored zero-based; the one-line accessors and text form are one-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// From one-based one-line notation `(π(1), ..., π(n))`.
    pub fn from_one_line(one_line: &[usize]) -> Result<Self, PermError> {
        let n = one_line.len();
        let mut seen = vec![false; n];
        let mut images = Vec::with_capacity(n);
        for &v in one_line {
            if v == 0 || v > n || seen[v - 1] {
                return Err(PermError::NotAPermutation(format!("{one_line:?}")));
            }
            seen[v - 1] = true;
            images.push(v - 1);
        }
        Ok(Permutation { images })
    }

    /// From zero-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let one: Vec<usize> = images.iter().map(|&v| v + 1).collect();
        Self::from_one_line(&one)
    }

    /// The transposition swapping `a` and `b` (one-based).
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        assert!(a >= 1 && b >= 1 && a <= n && b <= n);
        let mut p = Self::identity(n);
        p.images.swap(a - 1, b - 1);
        p
    }

    /// The longest element `i -> n + 1 - i`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            images: (0..n).rev().collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Zero-based image of a zero-based point.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// The product `self * other`: apply `self`, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Self, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation {
            images: self.images.iter().map(|&v| other.images[v]).collect(),
        })
    }

    /// Inversion count `Σ_i |{k ≤ i : π(k) > π(i)}|`.
    pub fn length(&self) -> usize {
        let n = self.degree();
        let mut count = 0;
        for i in 0..n {
            for k in 0..i {
                if self.images[k] > self.images[i] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `Σ_{i=1}^{n-1} |{k ≤ i : π(k) > i}|`.
    pub fn depth(&self) -> usize {
        let n = self.degree();
        let mut total = 0;
        // one-based i; images are zero-based so π(k) > i  <=>  images[k-1] >= i
        for i in 1..n {
            total += self.images[..i].iter().filter(|&&v| v >= i).count();
        }
        total
    }

    /// Depth as the excedance sum `Σ_{π(k) > k} (π(k) − k)`.
    pub fn depth_by_excedances(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(k, &v)| v > k)
            .map(|(k, &v)| v - k)
            .sum()
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
            }
        }
        cycles
    }

    /// Fewest transpositions whose product is `π`: `n − #cycles`.
    pub fn transposition_length(&self) -> usize {
        self.degree() - self.cycle_count()
    }

    /// `Σ_k |π(k) − k|`.
    pub fn sum_of_distances(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .map(|(k, &v)| v.abs_diff(k))
            .sum()
    }

    /// All of `Sym_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some((0..n).collect()),
        }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Left factor first; panics on degree mismatch.
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("degree mismatch in permutation product")
    }
}

impl Mul for Permutation {
    type Output = Permutation;
    fn mul(self, rhs: Permutation) -> Permutation {
        &self * &rhs
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_line())
    }
}

/// `n: p1 p2 ... pn`
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.degree())?;
        for v in self.one_line() {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts `n: p1 ... pn` or a bare `p1 ... pn`.
    fn from_str(s: &str) -> Result<Self, PermError> {
        let bad = || PermError::NotAPermutation(s.to_string());
        let (declared, body) = match s.split_once(':') {
            Some((n, rest)) => (Some(n.trim().parse::<usize>().map_err(|_| bad())?), rest),
            None => (None, s),
        };
        let one_line: Vec<usize> = body
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        if declared.is_some_and(|n| n != one_line.len()) {
            return Err(bad());
        }
        Self::from_one_line(&one_line)
    }
}

/// Lexicographic enumeration of `Sym_n` (next-permutation).
pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let n = succ.len();
        if n >= 2 {
            if let Some(i) = (0..n - 1).rev().find(|&i| succ[i] < succ[i + 1]) {
                let j = (i + 1..n).rev().find(|&j| succ[j] > succ[i]).expect("exists");
                succ.swap(i, j);
                succ[i + 1..].reverse();
                self.next = Some(succ);
            }
        }
        Some(Permutation { images: current })
    }
}

pub const HISTOGRAM_LIMIT: usize = 9;
pub const DOUBLE_COSET_LIMIT: usize = 8;

/// Number of permutations of each depth, `T(n, k)`.
pub fn depth_histogram(n: usize) -> Result<BTreeMap<usize, u64>, PermError> {
    if n > HISTOGRAM_LIMIT {
        return Err(PermError::DegreeTooLarge {
            n,
            limit: HISTOGRAM_LIMIT,
        });
    }
    let mut hist = BTreeMap::new();
    for p in Permutation::all(n) {
        *hist.entry(p.depth()).or_insert(0) += 1;
    }
    Ok(hist)
}

/// Maximal depth over `Sym_n`: `(n/2)^2` for even `n`, `(n−1)(n+1)/4` for odd.
pub fn max_depth(n: usize) -> usize {
    if n % 2 == 0 {
        (n / 2) * (n / 2)
    } else {
        (n - 1) * (n + 1) / 4
    }
}

/// A composition `(k_1, ..., k_{m+1})` of `n` into positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PermError> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(PermError::InvalidComposition(format!("{parts:?}")));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Zero-based block index of every point.
    fn block_of(&self) -> Vec<usize> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(b, &k)| std::iter::repeat(b).take(k))
            .collect()
    }

    /// Adjacent transpositions `(i, i+1)` lying inside one block; they
    /// generate the Young subgroup.
    fn generators(&self) -> Vec<Permutation> {
        let blocks = self.block_of();
        let n = blocks.len();
        (1..n)
            .filter(|&i| blocks[i - 1] == blocks[i])
            .map(|i| Permutation::transposition(n, i, i + 1))
            .collect()
    }

    /// `|Y_{T'}| = Π k_i!`.
    pub fn young_order(&self) -> u64 {
        self.parts
            .iter()
            .map(|&k| (1..=k as u64).product::<u64>())
            .product()
    }
}

/// Whether `pi` stabilizes every consecutive block of the composition.
pub fn young_contains(composition: &Composition, pi: &Permutation) -> Result<bool, PermError> {
    if composition.total() != pi.degree() {
        return Err(PermError::DegreeMismatch(composition.total(), pi.degree()));
    }
    let blocks = composition.block_of();
    Ok((0..pi.degree()).all(|i| blocks[pi.apply(i)] == blocks[i]))
}

/// The double coset `Y π Y`, enumerated by closing `{π}` under left and
/// right multiplication by the in-block adjacent transpositions.
pub fn double_coset(pi: &Permutation, composition: &Composition) -> Result<Vec<Permutation>, PermError> {
    let n = pi.degree();
    if composition.total() != n {
        return Err(PermError::DegreeMismatch(composition.total(), n));
    }
    if n > DOUBLE_COSET_LIMIT {
        return Err(PermError::DegreeTooLarge {
            n,
            limit: DOUBLE_COSET_LIMIT,
        });
    }
    let gens = composition.generators();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(pi.clone());
    queue.push_back(pi.clone());
    while let Some(x) = queue.pop_front() {
        for s in &gens {
            for y in [s * &x, &x * s] {
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    let mut all: Vec<_> = seen.into_iter().collect();
    all.sort();
    Ok(all)
}

/// The unique element of minimal length in `Y π Y`.
pub fn min_double_coset_rep(pi: &Permutation, composition: &Composition) -> Result<Permutation, PermError> {
    let coset = double_coset(pi, composition)?;
    let min_len = coset.iter().map(Permutation::length).min().expect("nonempty");
    let mut minimal = coset.into_iter().filter(|p| p.length() == min_len);
    let rep = minimal.next().expect("nonempty");
    debug_assert!(minimal.next().is_none(), "minimal representative is unique");
    Ok(rep)
}
