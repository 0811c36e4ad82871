use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::poly;
use super::FieldError;

/// Largest field order supported. Arithmetic is table driven.
pub const MAX_ORDER: u32 = 1 << 16;

/// A finite field GF(p^e).
///
/// Elements are plain `u32` encodings in `[0, q)`: the little-endian base-p
/// digits of the element's coefficients in the polynomial basis
/// `1, x, ..., x^(e-1)`. So `0` is the additive and `1` the multiplicative
/// identity.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Self, FieldError> {
        Self::new(p, 1, None)
    }

    /// GF(p^e) with the default modulus: the smallest monic irreducible
    /// polynomial of degree `e` (see [`poly::smallest_irreducible`]).
    pub fn extension(p: u32, e: u32) -> Result<Self, FieldError> {
        Self::new(p, e, None)
    }

    /// GF(q) with the default modulus, for a prime power `q`.
    pub fn from_order(q: u32) -> Result<Self, FieldError> {
        let p = (2..=q.max(2)).find(|d| q % d == 0).unwrap_or(q);
        let mut rest = q;
        let mut e = 0;
        while rest > 1 && rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if rest != 1 || e == 0 {
            return Err(FieldError::NotPrimePower(q));
        }
        Self::new(p, e, None)
    }

    /// GF(p^e). `modulus` holds little-endian coefficients over GF(p) and
    /// must be monic of degree `e`; it is ignored for `e == 1` only if absent.
    pub fn new(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrimeCharacteristic(p));
        }
        if e == 0 {
            return Err(FieldError::DegreeMismatch { expected: 1, found: 0 });
        }
        let q = (p as u64).checked_pow(e).filter(|&q| q <= MAX_ORDER as u64);
        let Some(q) = q else {
            return Err(FieldError::TooLarge { p, e });
        };
        let q = q as u32;
        let base = Self::build(p, 1, p, None);
        let modulus = match (e, modulus) {
            (1, None) => None,
            (_, Some(m)) => {
                let m = poly::trim(m.to_vec());
                let deg = poly::degree(&m).unwrap_or(0);
                if deg != e as usize {
                    return Err(FieldError::DegreeMismatch {
                        expected: e as usize,
                        found: deg,
                    });
                }
                if m.iter().any(|&c| c >= p) || m[deg] != 1 {
                    return Err(FieldError::NotMonic);
                }
                if !poly::is_irreducible(&base, &m) {
                    return Err(FieldError::ReducibleModulus);
                }
                if e == 1 {
                    None
                } else {
                    Some(m)
                }
            }
            (_, None) => Some(poly::smallest_irreducible(&base, e as usize)),
        };
        if modulus.is_none() {
            return Ok(base);
        }
        Ok(Self::build(p, e, q, modulus))
    }

    fn build(p: u32, e: u32, q: u32, modulus: Option<Vec<u32>>) -> Self {
        let digits = |mut v: u32| -> Vec<u32> {
            let mut d = Vec::with_capacity(e as usize);
            for _ in 0..e {
                d.push(v % p);
                v /= p;
            }
            d
        };
        let encode = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let add_raw = |a: u32, b: u32| -> u32 {
            let (da, db) = (digits(a), digits(b));
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            encode(&s)
        };
        let mul_raw = |a: u32, b: u32| -> u32 {
            match &modulus {
                None => ((a as u64 * b as u64) % p as u64) as u32,
                Some(m) => {
                    let (da, db) = (digits(a), digits(b));
                    let mut prod = vec![0u32; 2 * e as usize];
                    for (i, &x) in da.iter().enumerate() {
                        for (j, &y) in db.iter().enumerate() {
                            prod[i + j] = (prod[i + j] + x * y) % p;
                        }
                    }
                    // reduce by the monic modulus, highest degree first
                    for deg in (e as usize..prod.len()).rev() {
                        let c = prod[deg];
                        if c == 0 {
                            continue;
                        }
                        prod[deg] = 0;
                        for (k, &mk) in m[..e as usize].iter().enumerate() {
                            let idx = deg - e as usize + k;
                            prod[idx] = (prod[idx] + (p - c) * mk) % p;
                        }
                    }
                    encode(&prod[..e as usize])
                }
            }
        };

        let order = q - 1;
        let mut exp = vec![0u32; 2 * order.max(1) as usize];
        let mut log = vec![0u32; q as usize];
        if q == 2 {
            exp[0] = 1;
            exp[1] = 1;
        } else {
            let generator = (2..q)
                .find(|&g| {
                    let mut x = g;
                    let mut k = 1;
                    while x != 1 {
                        x = mul_raw(x, g);
                        k += 1;
                    }
                    k == order
                })
                .expect("multiplicative group of a finite field is cyclic");
            let mut x = 1u32;
            for k in 0..order {
                exp[k as usize] = x;
                exp[(k + order) as usize] = x;
                log[x as usize] = k;
                x = mul_raw(x, generator);
            }
        }

        let neg: Vec<u32> = (0..q)
            .map(|a| {
                let d: Vec<u32> = digits(a).iter().map(|&c| (p - c) % p).collect();
                encode(&d)
            })
            .collect();
        let add = (q <= 256).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = add_raw(a, b);
                }
            }
            t
        });

        Field {
            inner: Arc::new(Inner {
                p,
                e,
                q,
                modulus,
                exp,
                log,
                neg,
                add,
            }),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.e
    }

    /// Number of elements q = p^e.
    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Little-endian modulus coefficients; `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.inner.modulus.as_deref()
    }

    #[inline]
    pub fn contains(&self, a: u32) -> bool {
        a < self.inner.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.inner;
        if inner.e == 1 {
            let s = a + b;
            return if s >= inner.p { s - inner.p } else { s };
        }
        if inner.p == 2 {
            return a ^ b;
        }
        match &inner.add {
            Some(t) => t[(a * inner.q + b) as usize],
            None => {
                let p = inner.p;
                let (mut a, mut b) = (a, b);
                let mut out = 0;
                let mut place = 1;
                for _ in 0..inner.e {
                    out += ((a % p + b % p) % p) * place;
                    a /= p;
                    b /= p;
                    place *= p;
                }
                out
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.inner.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.inner;
        inner.exp[(inner.log[a as usize] + inner.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let inner = &*self.inner;
        let order = inner.q - 1;
        Some(inner.exp[((order - inner.log[a as usize]) % order) as usize])
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.inner.q - 1) as u64;
        let l = (self.inner.log[a as usize] as u64 * (k % order)) % order;
        self.inner.exp[l as usize]
    }

    /// Field element wrapper for operator syntax.
    pub fn element(&self, value: u32) -> FieldElement {
        assert!(self.contains(value), "encoding {value} out of range for {self:?}");
        FieldElement {
            field: self.clone(),
            value,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.inner.q
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.e == other.inner.e
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.inner.p.hash(state);
        self.inner.e.hash(state);
        self.inner.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.inner.modulus {
            None => write!(f, "GF({})", self.inner.q),
            Some(m) => write!(f, "GF({}; modulus {:?})", self.inner.q, m),
        }
    }
}

/// An element together with its field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    value: u32,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inverse(&self) -> Option<FieldElement> {
        self.field.inv(self.value).map(|v| self.field.element(v))
    }

    pub fn pow(&self, k: u64) -> FieldElement {
        self.field.element(self.field.pow(self.value, k))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident) => {
        impl $tr for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                assert!(self.field == rhs.field, "mixed fields");
                FieldElement {
                    field: self.field.clone(),
                    value: self.field.$method(self.value, rhs.value),
                }
            }
        }
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            value: self.field.neg(self.value),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_fields() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(f2.order(), 2);
        assert!(f2.modulus().is_none());

        let f4 = Field::extension(2, 2).unwrap();
        assert_eq!(f4.order(), 4);
        assert_eq!(f4.modulus(), Some(&[1, 1, 1][..]));

        assert_eq!(Field::prime(4).unwrap_err(), FieldError::NonPrimeCharacteristic(4));
        assert_eq!(
            Field::new(2, 2, Some(&[1, 0, 1])).unwrap_err(),
            FieldError::ReducibleModulus
        );
        assert!(matches!(
            Field::new(2, 3, Some(&[1, 1, 1])),
            Err(FieldError::DegreeMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn default_moduli_are_smallest() {
        assert_eq!(Field::extension(2, 3).unwrap().modulus(), Some(&[1, 1, 0, 1][..]));
        assert_eq!(Field::extension(2, 4).unwrap().modulus(), Some(&[1, 1, 0, 0, 1][..]));
        assert_eq!(Field::extension(3, 2).unwrap().modulus(), Some(&[1, 0, 1][..]));
    }

    #[test]
    fn from_order() {
        assert_eq!(Field::from_order(8).unwrap(), Field::extension(2, 3).unwrap());
        assert_eq!(Field::from_order(7).unwrap(), Field::prime(7).unwrap());
        assert_eq!(Field::from_order(9).unwrap().characteristic(), 3);
        for bad in [0, 1, 6, 12] {
            assert_eq!(Field::from_order(bad).unwrap_err(), FieldError::NotPrimePower(bad));
        }
    }

    #[test]
    fn explicit_modulus_matches_default_field() {
        let a = Field::new(2, 3, Some(&[1, 1, 0, 1])).unwrap();
        let b = Field::extension(2, 3).unwrap();
        assert_eq!(a, b);
        let c = Field::new(2, 3, Some(&[1, 0, 1, 1])).unwrap();
        assert_ne!(a, c);
    }

    fn small_fields() -> Vec<Field> {
        vec![
            Field::prime(2).unwrap(),
            Field::prime(3).unwrap(),
            Field::extension(2, 2).unwrap(),
            Field::prime(5).unwrap(),
            Field::prime(7).unwrap(),
            Field::extension(2, 3).unwrap(),
            Field::extension(3, 2).unwrap(),
            Field::prime(11).unwrap(),
            Field::prime(13).unwrap(),
            Field::extension(2, 4).unwrap(),
        ]
    }

    #[test]
    fn frobenius_fixes_everything() {
        for f in small_fields() {
            for x in f.elements() {
                assert_eq!(f.pow(x, f.order() as u64), x, "{f:?} x={x}");
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in small_fields().into_iter().filter(|f| f.order() <= 9) {
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn gf4_multiplication_table() {
        // x^2 = x + 1 with encoding x -> 2
        let f = Field::extension(2, 2).unwrap();
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.mul(3, 3), 2);
    }

    #[test]
    fn large_odd_extension_addition() {
        // q > 256 takes the digit-wise path
        let f = Field::extension(3, 6).unwrap();
        assert_eq!(f.order(), 729);
        for a in [0, 1, 5, 200, 728] {
            assert_eq!(f.sub(f.add(a, 17), 17), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
        }
    }

    #[test]
    fn element_wrapper() {
        let f = Field::prime(5).unwrap();
        let a = f.element(3);
        let b = f.element(4);
        assert_eq!((&a + &b).value(), 2);
        assert_eq!((&a * &b).value(), 2);
        assert_eq!((-&a).value(), 2);
        assert_eq!(a.inverse().unwrap().value(), 2);
        assert!(f.element(0).inverse().is_none());
    }
}
