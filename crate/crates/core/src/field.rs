//! Table-driven arithmetic in GF(p) and GF(2^m) for field orders up to 2^16.
//!
//! Elements are stored by their canonical integer encoding: the residue for
//! prime fields, and the coefficient bit-vector (bit `i` = coefficient of
//! `x^i`) for binary extension fields. Multiplication goes through log and
//! antilog tables built from a primitive element.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// A field element by integer encoding. Only meaningful alongside the
/// [`Field`] that produced it.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Felt(u16);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0 as u32
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serialized form of a field, enough to rebuild identical tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub m: u32,
    /// Reduction polynomial coefficients, constant term first. `None` for prime fields.
    pub poly: Option<Vec<u32>>,
    pub alpha: u32,
}

struct Tables {
    p: u32,
    m: u32,
    q: u32,
    /// Bit pattern of the reduction polynomial including the `x^m` term.
    poly: Option<u32>,
    alpha: Felt,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
    /// `antilog[i] = alpha^i` for `i < q - 1`.
    antilog: Vec<u16>,
}

/// A finite field context. Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct Field {
    t: Arc<Tables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.t.p)
            .field("m", &self.t.m)
            .field("poly", &self.t.poly)
            .field("alpha", &self.t.alpha.0)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t)
            || (self.t.p == other.t.p
                && self.t.m == other.t.m
                && self.t.poly == other.t.poly
                && self.t.alpha == other.t.alpha)
    }
}

impl Eq for Field {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(n: u32) -> u32 {
    let mut c = n.max(2);
    while !is_prime(c) {
        c += 1;
    }
    c
}

fn bin_degree(a: u32) -> i32 {
    31 - a.leading_zeros() as i32
}

fn bin_rem(mut a: u32, b: u32) -> u32 {
    let db = bin_degree(b);
    while a != 0 && bin_degree(a) >= db {
        a ^= b << (bin_degree(a) - db);
    }
    a
}

/// Trial division by every binary polynomial of degree `1..=deg/2`.
fn binary_irreducible(poly: u32) -> bool {
    let deg = bin_degree(poly);
    if deg < 1 {
        return false;
    }
    for d in 1..=deg / 2 {
        for cand in (1u32 << d)..(1u32 << (d + 1)) {
            if bin_rem(poly, cand) == 0 {
                return false;
            }
        }
    }
    true
}

/// The smallest irreducible binary polynomial of degree `m` by integer encoding.
pub fn smallest_irreducible(m: u32) -> u32 {
    ((1u32 << m)..(1u32 << (m + 1)))
        .find(|&c| binary_irreducible(c))
        .expect("an irreducible polynomial exists in every degree")
}

fn raw_mul(p: u32, m: u32, poly: Option<u32>, a: u32, b: u32) -> u32 {
    match poly {
        None => ((a as u64 * b as u64) % p as u64) as u32,
        Some(red) => {
            let mut acc = 0u32;
            let mut a = a;
            let mut b = b;
            while b != 0 {
                if b & 1 != 0 {
                    acc ^= a;
                }
                b >>= 1;
                a <<= 1;
                if a & (1 << m) != 0 {
                    a ^= red;
                }
            }
            acc
        }
    }
}

/// Multiplicative order of `g` under `mul`, stopping once it exceeds `bound`.
fn order_of(p: u32, m: u32, poly: Option<u32>, g: u32, bound: u32) -> u32 {
    let mut x = g;
    let mut k = 1;
    while x != 1 {
        x = raw_mul(p, m, poly, x, g);
        k += 1;
        if k > bound || x == 0 {
            return 0;
        }
    }
    k
}

fn validate(p: u32, m: u32) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::UnsupportedField { p, m });
    }
    let q = (p as u64).checked_pow(m).filter(|&q| q <= MAX_ORDER);
    let q = q.ok_or(Error::FieldTooLarge { p, m })?;
    if m > 1 && p != 2 {
        return Err(Error::UnsupportedField { p, m });
    }
    Ok(q as u32)
}

impl Field {
    /// Build GF(p^m) with the canonical reduction polynomial and the
    /// smallest primitive element.
    pub fn new(p: u32, m: u32) -> Result<Field> {
        Self::with_params(p, m, None, None)
    }

    /// Prime field GF(p).
    pub fn prime(p: u32) -> Result<Field> {
        Self::new(p, 1)
    }

    /// Build GF(p^m) with an explicit reduction polynomial (coefficients,
    /// constant term first) and/or primitive element.
    pub fn with_params(p: u32, m: u32, poly: Option<&[u32]>, alpha: Option<u32>) -> Result<Field> {
        let q = validate(p, m)?;
        let red = if m > 1 {
            match poly {
                Some(coeffs) => {
                    if coeffs.len() != m as usize + 1
                        || coeffs.iter().any(|&c| c > 1)
                        || coeffs[m as usize] != 1
                    {
                        return Err(Error::BadReductionPolynomial(coeffs.to_vec()));
                    }
                    let bits = coeffs
                        .iter()
                        .enumerate()
                        .fold(0u32, |acc, (i, &c)| acc | (c << i));
                    if !binary_irreducible(bits) {
                        return Err(Error::BadReductionPolynomial(coeffs.to_vec()));
                    }
                    Some(bits)
                }
                None => Some(smallest_irreducible(m)),
            }
        } else {
            if let Some(coeffs) = poly {
                if !coeffs.is_empty() {
                    return Err(Error::BadReductionPolynomial(coeffs.to_vec()));
                }
            }
            None
        };

        let group = q - 1;
        let alpha = match alpha {
            Some(a) => {
                if a >= q || a == 0 || order_of(p, m, red, a, group) != group {
                    return Err(Error::NotPrimitive(a));
                }
                a
            }
            None => (1..q)
                .find(|&g| order_of(p, m, red, g, group) == group)
                .expect("the multiplicative group of a finite field is cyclic"),
        };

        let mut log = vec![0u32; q as usize];
        let mut antilog = vec![0u16; group as usize];
        let mut x = 1u32;
        for (i, slot) in antilog.iter_mut().enumerate() {
            *slot = x as u16;
            log[x as usize] = i as u32;
            x = raw_mul(p, m, red, x, alpha);
        }

        Ok(Field {
            t: Arc::new(Tables {
                p,
                m,
                q,
                poly: red,
                alpha: Felt(alpha as u16),
                log,
                antilog,
            }),
        })
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Field> {
        Self::with_params(d.p, d.m, d.poly.as_deref(), Some(d.alpha))
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.t.p,
            m: self.t.m,
            poly: self.reduction_poly(),
            alpha: self.t.alpha.value(),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.t.p
    }

    pub fn degree(&self) -> u32 {
        self.t.m
    }

    pub fn order(&self) -> u32 {
        self.t.q
    }

    pub fn alpha(&self) -> Felt {
        self.t.alpha
    }

    /// Reduction polynomial coefficients, constant term first.
    pub fn reduction_poly(&self) -> Option<Vec<u32>> {
        self.t
            .poly
            .map(|bits| (0..=self.t.m).map(|i| (bits >> i) & 1).collect())
    }

    /// The element with integer encoding `v`.
    ///
    /// # Panics
    ///
    /// Panics if `v >= q`; use [`Field::try_elem`] for untrusted input.
    pub fn elem(&self, v: u32) -> Felt {
        self.try_elem(v).expect("value out of field range")
    }

    pub fn try_elem(&self, v: u32) -> Result<Felt> {
        if v < self.t.q {
            Ok(Felt(v as u16))
        } else {
            Err(Error::NotAnElement {
                value: v,
                q: self.t.q,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Felt> {
        (0..self.t.q).map(|v| Felt(v as u16))
    }

    #[inline]
    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        if self.t.p == 2 {
            Felt(a.0 ^ b.0)
        } else {
            let s = a.0 as u32 + b.0 as u32;
            let p = self.t.p;
            Felt(if s >= p { s - p } else { s } as u16)
        }
    }

    #[inline]
    pub fn neg(&self, a: Felt) -> Felt {
        if self.t.p == 2 || a.0 == 0 {
            a
        } else {
            Felt((self.t.p - a.0 as u32) as u16)
        }
    }

    #[inline]
    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        if a.0 == 0 || b.0 == 0 {
            return Felt::ZERO;
        }
        let group = self.t.q - 1;
        let mut e = self.t.log[a.0 as usize] + self.t.log[b.0 as usize];
        if e >= group {
            e -= group;
        }
        Felt(self.t.antilog[e as usize])
    }

    pub fn inv(&self, a: Felt) -> Result<Felt> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let group = self.t.q - 1;
        let l = self.t.log[a.0 as usize];
        Ok(Felt(self.t.antilog[((group - l) % group) as usize]))
    }

    pub fn div(&self, a: Felt, b: Felt) -> Result<Felt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Felt, e: u64) -> Felt {
        if e == 0 {
            return Felt::ONE;
        }
        if a.0 == 0 {
            return Felt::ZERO;
        }
        let group = (self.t.q - 1) as u64;
        let l = self.t.log[a.0 as usize] as u64;
        Felt(self.t.antilog[((l * (e % group)) % group) as usize])
    }

    /// `alpha^e`.
    pub fn alpha_pow(&self, e: u64) -> Felt {
        let group = (self.t.q - 1) as u64;
        Felt(self.t.antilog[(e % group) as usize])
    }

    /// Discrete log base `alpha`, `None` for zero.
    pub fn log(&self, a: Felt) -> Option<u32> {
        (a.0 != 0).then(|| self.t.log[a.0 as usize])
    }

    /// Multiply without the tables; used to cross-check them.
    pub fn mul_slow(&self, a: Felt, b: Felt) -> Felt {
        Felt(raw_mul(self.t.p, self.t.m, self.t.poly, a.value(), b.value()) as u16)
    }

    pub fn dot(&self, a: &[Felt], b: &[Felt]) -> Felt {
        a.iter()
            .zip(b)
            .fold(Felt::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf7_smallest_generator_is_three() {
        let f = Field::new(7, 1).unwrap();
        assert_eq!(f.order(), 7);
        assert_eq!(f.alpha(), f.elem(3));
        let powers: Vec<u32> = (1..=6).map(|e| f.alpha_pow(e).value()).collect();
        assert_eq!(powers, vec![3, 2, 6, 4, 5, 1]);
    }

    #[test]
    fn gf2_alpha_is_one() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.alpha(), Felt::ONE);
        assert_eq!(f.reduction_poly(), None);
    }

    #[test]
    fn gf256_uses_smallest_irreducible() {
        let f = Field::new(2, 8).unwrap();
        assert_eq!(f.order(), 256);
        // x^8 + x^4 + x^3 + x + 1
        assert_eq!(f.reduction_poly(), Some(vec![1, 1, 0, 1, 1, 0, 0, 0, 1]));
        // x is not primitive modulo this polynomial; x + 1 is.
        assert_eq!(f.alpha(), f.elem(3));
    }

    #[test]
    fn small_arithmetic() {
        let f = Field::new(7, 1).unwrap();
        assert_eq!(f.mul(f.elem(3), f.elem(3)), f.elem(2));
        assert_eq!(f.pow(f.alpha(), 5), f.elem(5));
        assert_eq!(f.sub(f.elem(1), f.elem(4)), f.elem(4));
        assert_eq!(f.inv(f.elem(2)).unwrap(), f.elem(4));
        assert!(matches!(f.inv(Felt::ZERO), Err(Error::DivisionByZero)));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(Field::new(8, 1), Err(Error::NotPrime(8))));
        assert!(matches!(
            Field::new(3, 2),
            Err(Error::UnsupportedField { .. })
        ));
        assert!(matches!(
            Field::new(2, 17),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(matches!(
            Field::new(65537, 1),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(matches!(
            Field::new(2, 0),
            Err(Error::UnsupportedField { .. })
        ));
        assert!(matches!(
            Field::with_params(7, 1, None, Some(2)),
            Err(Error::NotPrimitive(2))
        ));
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert!(matches!(
            Field::with_params(2, 2, Some(&[1, 0, 1]), None),
            Err(Error::BadReductionPolynomial(_))
        ));
    }

    #[test]
    fn explicit_alpha_and_descriptor_round_trip() {
        let f = Field::with_params(7, 1, None, Some(5)).unwrap();
        assert_eq!(f.alpha(), f.elem(5));
        let g = Field::from_descriptor(&f.descriptor()).unwrap();
        assert_eq!(f, g);
        let h = Field::new(2, 4).unwrap();
        assert_eq!(Field::from_descriptor(&h.descriptor()).unwrap(), h);
    }

    #[test]
    fn tables_are_consistent() {
        for (p, m) in [
            (2, 1),
            (3, 1),
            (7, 1),
            (13, 1),
            (2, 2),
            (2, 3),
            (2, 5),
            (2, 8),
            (2, 16),
        ] {
            let f = Field::new(p, m).unwrap();
            let q = f.order();
            let mut seen = vec![false; q as usize];
            for e in 0..(q - 1) as u64 {
                let x = f.alpha_pow(e);
                assert!(!x.is_zero());
                assert!(!seen[x.value() as usize], "alpha repeats in GF({p}^{m})");
                seen[x.value() as usize] = true;
                assert_eq!(f.log(x), Some(e as u32));
            }
            assert_eq!(f.pow(f.alpha(), (q - 1) as u64), Felt::ONE);
        }
    }

    #[test]
    fn small_degree_polynomials_have_no_roots() {
        for m in 2..=3 {
            let bits = smallest_irreducible(m);
            for x in 0..2u32 {
                let v = (0..=m).fold(0, |acc, i| acc ^ (((bits >> i) & 1) * x.pow(i)));
                assert_eq!(v & 1, 1);
            }
        }
    }

    #[test]
    fn characteristic_two_self_inverse() {
        let f = Field::new(2, 4).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, a), Felt::ZERO);
        }
    }

    #[test]
    fn table_mul_matches_schoolbook() {
        for (p, m) in [(11, 1), (2, 4), (2, 8)] {
            let f = Field::new(p, m).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_slow(a, b));
                }
            }
        }
    }
}
