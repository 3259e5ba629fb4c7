//! Dense univariate polynomials over a [`Field`].

use crate::error::{Error, Result};
use crate::field::{Felt, Field};

/// Coefficients indexed by degree with no trailing zeros; the zero
/// polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Felt>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Felt::ONE)
    }

    pub fn constant(c: Felt) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<Felt>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Monic polynomial `prod (x - r)` over the multiset `roots`.
    pub fn from_roots(field: &Field, roots: &[Felt]) -> Poly {
        let mut coeffs = Vec::with_capacity(roots.len() + 1);
        coeffs.push(Felt::ONE);
        for &r in roots {
            let neg_r = field.neg(r);
            coeffs.push(Felt::ZERO);
            for i in (0..coeffs.len()).rev() {
                let shifted = if i > 0 { coeffs[i - 1] } else { Felt::ZERO };
                coeffs[i] = field.add(shifted, field.mul(neg_r, coeffs[i]));
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[Felt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Felt> {
        self.coeffs.last().copied()
    }

    /// Coefficient vector zero-padded to `len`.
    ///
    /// # Panics
    ///
    /// Panics if the polynomial has more than `len` coefficients.
    pub fn to_padded(&self, len: usize) -> Vec<Felt> {
        assert!(
            self.coeffs.len() <= len,
            "polynomial does not fit in {len} coefficients"
        );
        let mut v = self.coeffs.clone();
        v.resize(len, Felt::ZERO);
        v
    }

    pub fn eval(&self, field: &Field, x: Felt) -> Felt {
        self.coeffs
            .iter()
            .rev()
            .fold(Felt::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn scale(&self, field: &Field, c: Felt) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn add(&self, field: &Field, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Poly, i: usize| p.coeffs.get(i).copied().unwrap_or(Felt::ZERO);
        Poly::from_coeffs(
            (0..len)
                .map(|i| field.add(get(self, i), get(other, i)))
                .collect(),
        )
    }

    pub fn sub(&self, field: &Field, other: &Poly) -> Poly {
        self.add(field, &other.scale(field, field.neg(Felt::ONE)))
    }

    pub fn mul(&self, field: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Felt::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    /// Quotient and remainder with `deg(rem) < deg(divisor)`.
    pub fn div_rem(&self, field: &Field, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dlead = divisor.leading().ok_or(Error::DivisionByZero)?;
        let dinv = field.inv(dlead)?;
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Felt::ZERO; rem.len() - ddeg];
        for i in (0..quot.len()).rev() {
            let c = field.mul(rem[i + ddeg], dinv);
            quot[i] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = field.sub(rem[i + j], field.mul(c, d));
            }
        }
        rem.truncate(ddeg);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf7() -> Field {
        Field::new(7, 1).unwrap()
    }

    fn p(f: &Field, c: &[u32]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&v| f.elem(v)).collect())
    }

    #[test]
    fn from_roots_examples() {
        let f = gf7();
        // (x - 1)(x - 3) = x^2 - 4x + 3
        assert_eq!(
            Poly::from_roots(&f, &[f.elem(1), f.elem(3)]),
            p(&f, &[3, 3, 1])
        );
        assert_eq!(Poly::from_roots(&f, &[]), Poly::one());
        assert_eq!(
            Poly::from_roots(&f, &[f.elem(0), f.elem(1)]),
            p(&f, &[0, 6, 1])
        );
    }

    #[test]
    fn eval_examples() {
        let f = gf7();
        let t = p(&f, &[0, 6, 1]);
        assert_eq!(t.eval(&f, f.elem(3)), f.elem(6));
        assert_eq!(Poly::zero().eval(&f, f.elem(5)), Felt::ZERO);
        assert_eq!(Poly::constant(f.elem(4)).eval(&f, f.elem(2)), f.elem(4));
    }

    #[test]
    fn scale_and_mul_examples() {
        let f = gf7();
        assert_eq!(p(&f, &[0, 6, 1]).scale(&f, f.elem(6)), p(&f, &[0, 1, 6]));
        let g2 = Field::new(2, 1).unwrap();
        let x1 = p(&g2, &[1, 1]);
        assert_eq!(x1.mul(&g2, &x1), p(&g2, &[1, 0, 1]));
    }

    #[test]
    fn normalization_and_degree() {
        let f = gf7();
        let a = p(&f, &[1, 2, 0, 0]);
        assert_eq!(a.degree(), Some(1));
        assert_eq!(a.coeffs().len(), 2);
        assert_eq!(p(&f, &[0, 0]).degree(), None);
        assert_eq!(
            a.to_padded(4),
            vec![f.elem(1), f.elem(2), Felt::ZERO, Felt::ZERO]
        );
    }

    #[test]
    fn division_by_zero_polynomial() {
        let f = gf7();
        assert!(matches!(
            p(&f, &[1, 1]).div_rem(&f, &Poly::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    fn arb_poly(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(0u32..13, 0..max_len)
    }

    proptest! {
        #[test]
        fn divmod_reconstructs(a in arb_poly(9), b in arb_poly(6)) {
            let f = Field::new(13, 1).unwrap();
            let a = p(&f, &a);
            let b = p(&f, &b);
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&f, &b).unwrap();
            prop_assert_eq!(q.mul(&f, &b).add(&f, &r), a.clone());
            prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
            let (q2, r2) = a.mul(&f, &b).div_rem(&f, &b).unwrap();
            prop_assert_eq!(q2, a);
            prop_assert!(r2.is_zero());
        }

        #[test]
        fn degree_is_additive(a in arb_poly(7), b in arb_poly(7)) {
            let f = Field::new(13, 1).unwrap();
            let a = p(&f, &a);
            let b = p(&f, &b);
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!(
                a.mul(&f, &b).degree(),
                Some(a.degree().unwrap() + b.degree().unwrap())
            );
        }

        #[test]
        fn from_roots_vanishes_exactly_on_roots(roots in prop::collection::vec(0u32..16, 0..6)) {
            let f = Field::new(2, 4).unwrap();
            let roots: Vec<Felt> = roots.into_iter().map(|v| f.elem(v)).collect();
            let t = Poly::from_roots(&f, &roots);
            prop_assert_eq!(t.degree(), Some(roots.len()));
            prop_assert_eq!(t.leading(), Some(Felt::ONE));
            for x in f.elements() {
                prop_assert_eq!(t.eval(&f, x).is_zero(), roots.contains(&x));
            }
        }
    }
}
