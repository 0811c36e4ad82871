//! Dense polynomials over a [`Field`], stored little-endian (index = degree).
//!
//! Only what is needed to find and test irreducible moduli.

use super::Field;

/// Drops trailing zero coefficients. The zero polynomial is the empty vector.
pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` modulo a nonzero `b`.
pub fn rem(field: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = field.inv(b[db]).expect("nonzero leading coefficient");
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let factor = field.mul(r[dr], lead_inv);
        let shift = dr - db;
        for (i, &bc) in b[..=db].iter().enumerate() {
            let t = field.mul(factor, bc);
            r[shift + i] = field.sub(r[shift + i], t);
        }
        r = trim(r);
    }
    r
}

pub fn mul(field: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    trim(out)
}

/// The monic polynomial of degree `deg` whose lower coefficients are the
/// base-q digits of `index` (little-endian).
pub fn monic_from_index(q: u32, deg: usize, mut index: u64) -> Vec<u32> {
    let mut coeffs = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        coeffs.push((index % q as u64) as u32);
        index /= q as u64;
    }
    coeffs.push(1);
    coeffs
}

/// Irreducibility by trial division against every monic polynomial of
/// degree 1..=deg/2.
pub fn is_irreducible(field: &Field, f: &[u32]) -> bool {
    let Some(deg) = degree(f) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    let q = field.order();
    for d in 1..=deg / 2 {
        let count = (q as u64).pow(d as u32);
        for index in 0..count {
            let g = monic_from_index(q, d, index);
            if rem(field, f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `deg`, ordering monic
/// polynomials by the integer whose base-q digits are their coefficients.
pub fn smallest_irreducible(field: &Field, deg: usize) -> Vec<u32> {
    let q = field.order() as u64;
    let count = q.pow(deg as u32);
    (0..count)
        .map(|i| monic_from_index(field.order(), deg, i))
        .find(|f| is_irreducible(field, f))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratics_over_gf2() {
        let f2 = Field::prime(2).unwrap();
        // x^2, x^2+1, x^2+x, x^2+x+1: only the last is irreducible
        let irreducible: Vec<_> = (0..4)
            .map(|i| monic_from_index(2, 2, i))
            .filter(|f| is_irreducible(&f2, f))
            .collect();
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn smallest_cubic_over_gf2() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(smallest_irreducible(&f2, 3), vec![1, 1, 0, 1]);
    }

    #[test]
    fn remainder_division_identity() {
        let f3 = Field::prime(3).unwrap();
        let a = vec![2, 1, 0, 1, 2];
        let b = vec![1, 1, 1];
        let r = rem(&f3, &a, &b);
        assert!(degree(&r).map_or(true, |d| d < 2));
        // a - r is divisible by b
        let diff: Vec<u32> = (0..a.len())
            .map(|i| f3.sub(a[i], *r.get(i).unwrap_or(&0)))
            .collect();
        assert!(rem(&f3, &diff, &b).is_empty());
    }
}
