//! Exhaustive desk-scale checks of the identities the library relies on.
//!
//! Each suite returns a [`SuiteResult`]. [`Verifier::with_depth`] swaps in
//! a different depth function so that mutation tests can confirm a suite
//! actually detects a broken statistic.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::codes::{
    code_checkerboard, code_derived, code_lifted, code_min_distance, code_sandwich, ebar, mrd_field_rep,
    mrd_gabidulin, DistanceMode, FlagCode,
};
use crate::flags::{
    apartment_flag, bruhat_decompose, circle_enumerate, flag_from_matrix, gallery_distance, grassmann_distance,
    relative_position, standard_flag, Flag, FlagType,
};
use crate::gfq::{Field, Matrix};
use crate::rng::XorShift64Star;
use crate::symgrp::Permutation;

pub type DepthFn = fn(&Permutation) -> usize;

pub const SUITES: [&str; 9] = [
    "lesym",
    "esym",
    "dE",
    "edepth",
    "circles",
    "bruhat",
    "constructions",
    "distmat",
    "mrd",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Copy)]
pub struct Verifier {
    depth: DepthFn,
}

impl Default for Verifier {
    fn default() -> Self {
        Verifier {
            depth: Permutation::depth,
        }
    }
}

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field(p: u32) -> Field {
    Field::prime(p).expect("prime")
}

fn random_invertible(f: &Field, n: usize, rng: &mut XorShift64Star) -> Matrix {
    loop {
        let data = (0..n * n).map(|_| rng.below(f.order() as u64) as u32).collect();
        let m = Matrix::from_vec(f, n, n, data).expect("n*n entries");
        if m.rank() == n {
            return m;
        }
    }
}

impl Verifier {
    pub fn with_depth(depth: DepthFn) -> Self {
        Verifier { depth }
    }

    pub fn run_all(&self) -> Vec<SuiteResult> {
        SUITES.iter().filter_map(|name| self.run(name)).collect()
    }

    /// Runs one suite by name; `None` for an unknown name.
    pub fn run(&self, name: &str) -> Option<SuiteResult> {
        let (name, outcome) = match name {
            "lesym" => ("lesym", self.lesym()),
            "esym" => ("esym", self.esym()),
            "dE" => ("dE", self.de()),
            "edepth" => ("edepth", self.edepth()),
            "circles" => ("circles", self.circles()),
            "bruhat" => ("bruhat", self.bruhat()),
            "constructions" => ("constructions", self.constructions()),
            "distmat" => ("distmat", self.distmat()),
            "mrd" => ("mrd", self.mrd()),
            _ => return None,
        };
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        Some(SuiteResult { name, passed, detail })
    }

    /// Depth bounds, the small-depth characterization, the maximum depth and
    /// the histogram values it is attained with, for `n ≤ 7`.
    fn lesym(&self) -> Outcome {
        let depth = self.depth;
        let mut checked = 0;
        for n in 1..=7 {
            let mut hist: BTreeMap<usize, u64> = BTreeMap::new();
            for pi in Permutation::all(n) {
                let (l, d, ltr) = (pi.length(), depth(&pi), pi.transposition_length());
                ensure(l + ltr <= 2 * d && d <= l, || format!("bounds fail for {pi}: l={l} ltr={ltr} depth={d}"))?;
                ensure((d == 1) == (l == 1), || format!("depth 1 iff length 1 fails for {pi}"))?;
                ensure((d == 0) == pi.is_identity(), || format!("depth 0 iff identity fails for {pi}"))?;
                *hist.entry(d).or_default() += 1;
                checked += 1;
            }
            let top = *hist.keys().next_back().expect("non-empty");
            let expected = if n % 2 == 0 { (n / 2) * (n / 2) } else { (n - 1) * (n + 1) / 4 };
            ensure(top == expected, || format!("max depth for n={n} is {top}, expected {expected}"))?;
            if n % 2 == 0 {
                let f: u64 = (1..=(n / 2) as u64).product();
                ensure(hist[&top] == f * f, || format!("T({n},{top}) = {}, expected {}", hist[&top], f * f))?;
            }
            if n == 3 {
                let row: Vec<u64> = hist.values().copied().collect();
                ensure(row == [1, 2, 3], || format!("T(3,.) = {row:?}"))?;
            }
            if n == 4 {
                ensure(hist.get(&4) == Some(&4), || "T(4,4) != 4".into())?;
            }
        }
        Ok(format!("{checked} permutations, n <= 7"))
    }

    fn esym(&self) -> Outcome {
        let depth = self.depth;
        let mut checked = 0;
        for n in 1..=7 {
            for pi in Permutation::all(n) {
                let d = depth(&pi);
                ensure(d == depth(&pi.inverse()), || format!("depth({pi}) != depth of its inverse"))?;
                ensure(pi.sum_of_distances() == 2 * d, || format!("s({pi}) != 2 depth"))?;
                checked += 1;
            }
        }
        Ok(format!("{checked} permutations, n <= 7"))
    }

    /// `2E > d_G ≥ E` on all distinct apartment pairs.
    fn de(&self) -> Outcome {
        let mut pairs = 0;
        for (p, max_n) in [(2, 5), (3, 4)] {
            let f = field(p);
            for n in 2..=max_n {
                let flags: Vec<Flag> = Permutation::all(n).map(|pi| apartment_flag(&f, &pi)).collect();
                for (i, a) in flags.iter().enumerate() {
                    for b in &flags[i + 1..] {
                        let e = grassmann_distance(a, b).map_err(|e| e.to_string())?;
                        let g = gallery_distance(a, b).map_err(|e| e.to_string())?;
                        ensure(2 * e > g && g >= e, || format!("2E > dG >= E fails: E={e} dG={g}"))?;
                        pairs += 1;
                    }
                }
            }
        }
        Ok(format!("{pairs} apartment pairs"))
    }

    /// `E(Δ_0, Δ_π) = depth(π)`, `d_G(Δ_0, Δ_π) = ℓ(π)`, and the
    /// orientation of the relative position.
    fn edepth(&self) -> Outcome {
        let depth = self.depth;
        let mut checked = 0;
        for p in [2, 3] {
            let f = field(p);
            for n in 2..=5 {
                let d0 = standard_flag(&f, &FlagType::full(n));
                for pi in Permutation::all(n) {
                    let dp = apartment_flag(&f, &pi);
                    let e = grassmann_distance(&d0, &dp).map_err(|e| e.to_string())?;
                    ensure(e == depth(&pi), || format!("E(D0, D_pi) = {e} but depth({pi}) = {}", depth(&pi)))?;
                    let g = gallery_distance(&d0, &dp).map_err(|e| e.to_string())?;
                    ensure(g == pi.length(), || format!("dG(D0, D_pi) != length for {pi}"))?;
                    checked += 1;
                }
            }
        }
        let f = field(2);
        for n in 2..=4 {
            let perms: Vec<Permutation> = Permutation::all(n).collect();
            for pi in &perms {
                for sigma in &perms {
                    let rp = relative_position(&apartment_flag(&f, pi), &apartment_flag(&f, sigma))
                        .map_err(|e| e.to_string())?;
                    ensure(rp == sigma * &pi.inverse(), || format!("orientation fails for {pi}, {sigma}"))?;
                    checked += 1;
                }
            }
        }
        Ok(format!("{checked} checks"))
    }

    /// `|C_π(Δ_0)| = q^ℓ(π)` for `n = 3` against all flags of `K^3`.
    fn circles(&self) -> Outcome {
        let full = FlagType::full(3);
        for p in [2u32, 3] {
            let f = field(p);
            let q = p as u64;
            let d0 = standard_flag(&f, &full);
            let mut by_position: HashMap<Permutation, HashSet<Flag>> = HashMap::new();
            for index in 0..q.pow(9) {
                let mut rest = index;
                let data = (0..9)
                    .map(|_| {
                        let v = (rest % q) as u32;
                        rest /= q;
                        v
                    })
                    .collect();
                let g = Matrix::from_vec(&f, 3, 3, data).expect("9 entries");
                if g.rank() == 3 {
                    let flag = flag_from_matrix(&g, &full).map_err(|e| e.to_string())?;
                    let pi = relative_position(&d0, &flag).map_err(|e| e.to_string())?;
                    by_position.entry(pi).or_default().insert(flag);
                }
            }
            for pi in Permutation::all(3) {
                let size = by_position.get(&pi).map_or(0, HashSet::len) as u64;
                ensure(size == q.pow(pi.length() as u32), || format!("|C_{pi}| = {size} over GF({q})"))?;
                let listed: HashSet<Flag> = circle_enumerate(&f, &pi)
                    .map_err(|e| e.to_string())?
                    .into_iter()
                    .collect();
                ensure(Some(&listed) == by_position.get(&pi), || format!("circle_enumerate differs for {pi}"))?;
            }
        }
        Ok("n = 3, q in {2, 3}".into())
    }

    fn bruhat(&self) -> Outcome {
        let mut rng = XorShift64Star::new(0xB0A7);
        let mut count = 0;
        for p in [2, 3] {
            let f = field(p);
            for _ in 0..1000 {
                let n = 1 + rng.below(5) as usize;
                let a = random_invertible(&f, n, &mut rng);
                let d = bruhat_decompose(&a).map_err(|e| e.to_string())?;
                ensure(d.reconstruct() == a, || format!("reconstruction fails for {a:?}"))?;
                ensure(d.lower.is_lower_triangular(), || "left factor not lower triangular".into())?;
                ensure(d.unipotent.is_lower_unitriangular(), || "right factor not unitriangular".into())?;
                if n >= 2 {
                    let full = FlagType::full(n);
                    let pos = relative_position(&standard_flag(&f, &full), &flag_from_matrix(&a, &full).map_err(|e| e.to_string())?)
                        .map_err(|e| e.to_string())?;
                    ensure(pos == d.perm, || format!("permutation differs from relative position for {a:?}"))?;
                }
                count += 1;
            }
        }
        Ok(format!("{count} matrices"))
    }

    fn constructions(&self) -> Outcome {
        let f2 = field(2);
        let f3 = field(3);
        let e = |x: crate::codes::CodeError| x.to_string();
        let mut cases: Vec<(String, FlagCode, usize, usize)> = vec![(
            "lifted q=2 k=2 n=4".into(),
            code_lifted(&mrd_field_rep(&f2, 2).map_err(e)?, 4).map_err(e)?,
            2,
            2,
        )];
        for f in [&f2, &f3] {
            cases.push((
                format!("sandwich m=1 q={}", f.order()),
                code_sandwich(1, &mrd_field_rep(f, 1).map_err(e)?, &mrd_field_rep(f, 2).map_err(e)?).map_err(e)?,
                3,
                2,
            ));
        }
        for t in 1..=2usize {
            let tower = (0..=t).map(|i| mrd_field_rep(&f2, 1 << i)).collect::<Result<Vec<_>, _>>().map_err(e)?;
            cases.push((
                format!("checkerboard q=2 t={t}"),
                code_checkerboard(&tower).map_err(e)?,
                (1 << (t + 1)) - 1,
                1 << t,
            ));
        }
        for (n, k) in [(4, 1), (5, 1), (5, 2), (6, 2)] {
            cases.push((
                format!("derived q=2 n={n} k={k}"),
                code_derived(&f2, n, k).map_err(e)?,
                (n - k) * (n - k - 1) / 2,
                k + 1,
            ));
        }
        for (label, code, dim, d) in &cases {
            let q = code.field().order() as u64;
            ensure(code.len() as u64 == q.pow(*dim as u32), || format!("{label}: |C| = {}", code.len()))?;
            ensure(code.dimension() == *dim, || format!("{label}: dim = {}", code.dimension()))?;
            let pairwise = code_min_distance(code, DistanceMode::Pairwise).map_err(e)?;
            let group = code_min_distance(code, DistanceMode::Group).map_err(e)?;
            ensure(pairwise == *d && group == *d, || {
                format!("{label}: pairwise {pairwise}, group {group}, expected {d}")
            })?;
        }
        Ok(format!("{} codes", cases.len()))
    }

    /// `ebar(g, T) = E(Δ_T, Δ_T g)` on random block-unitriangular `g`.
    fn distmat(&self) -> Outcome {
        let mut rng = XorShift64Star::new(0xD157);
        for sample in 0..1000 {
            let f = field(if sample % 2 == 0 { 2 } else { 3 });
            let n = 2 + rng.below(5) as usize;
            let mask = 1 + rng.below((1 << (n - 1)) - 1);
            let dims: Vec<usize> = (1..n).filter(|d| mask & (1 << (d - 1)) != 0).collect();
            let t = FlagType::new(n, dims).map_err(|e| e.to_string())?;
            let g = random_block_unitriangular(&f, &t, &mut rng);
            let lhs = ebar(&g, &t).map_err(|e| e.to_string())?;
            let moved = flag_from_matrix(&g, &t).map_err(|e| e.to_string())?;
            let rhs = grassmann_distance(&standard_flag(&f, &t), &moved).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("ebar {lhs} != distance {rhs} for {g:?}"))?;
        }
        Ok("1000 samples, n <= 6".into())
    }

    fn mrd(&self) -> Outcome {
        let mut codes = 0;
        for q in [2u32, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = Field::from_order(q).map_err(|e| e.to_string())?;
            let mut k = 1;
            while (q as u64).pow(k as u32) <= 16 {
                let c = mrd_field_rep(&f, k).map_err(|e| e.to_string())?;
                let r = c.min_rank().map_err(|e| e.to_string())?;
                ensure(r == Some(k), || format!("field representation q={q} k={k}: min rank {r:?}"))?;
                codes += 1;
                k += 1;
            }
        }
        for q in [2u32, 3, 4] {
            let f = Field::from_order(q).map_err(|e| e.to_string())?;
            for m in 1.. {
                if (q as u64).pow(m as u32) > 1 << 14 {
                    break;
                }
                for kappa in 1..=m {
                    if (q as u64).pow((m * kappa) as u32) > 1 << 14 {
                        break;
                    }
                    for length in kappa..=m {
                        let c = mrd_gabidulin(&f, m, length, kappa).map_err(|e| e.to_string())?;
                        let r = c.min_rank().map_err(|e| e.to_string())?;
                        let designed = length - kappa + 1;
                        ensure(r == Some(designed), || {
                            format!("Gabidulin q={q} m={m} n'={length} kappa={kappa}: min rank {r:?}")
                        })?;
                        codes += 1;
                    }
                }
            }
        }
        Ok(format!("{codes} codes, exhaustive"))
    }
}

fn random_block_unitriangular(f: &Field, t: &FlagType, rng: &mut XorShift64Star) -> Matrix {
    let n = t.ambient();
    let block_of = |i: usize| t.dims().iter().filter(|&&d| d <= i).count();
    let mut g = Matrix::identity(f, n);
    for i in 0..n {
        for j in i + 1..n {
            if block_of(j) > block_of(i) {
                g.set(i, j, rng.below(f.order() as u64) as u32);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_suites_pass() {
        let v = Verifier::default();
        for name in ["lesym", "esym", "edepth", "distmat", "constructions"] {
            let r = v.run(name).unwrap();
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
        assert!(v.run("nonsense").is_none());
    }

    #[test]
    fn mutated_depth_is_caught() {
        fn off_by_one(pi: &Permutation) -> usize {
            pi.depth() + 1
        }
        let v = Verifier::with_depth(off_by_one);
        assert!(!v.run("lesym").unwrap().passed);
        assert!(!v.run("edepth").unwrap().passed);
    }
}
