use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::Field;

/// Dense univariate polynomial, low degree first, with no trailing zeros.
#[derive(Clone, PartialEq)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        UniPoly { field, coeffs: vec![one] }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        UniPoly::new(field, vec![c])
    }

    /// The indeterminate.
    pub fn x(field: F) -> Self {
        let coeffs = vec![field.zero(), field.one()];
        UniPoly { field, coeffs }
    }

    /// `c * x^deg`.
    pub fn monomial(field: F, c: F::Elem, deg: usize) -> Self {
        let mut coeffs = vec![field.zero(); deg + 1];
        coeffs[deg] = c;
        UniPoly::new(field, coeffs)
    }

    /// Product of `(x - r)` over the given roots.
    pub fn from_roots(field: F, roots: &[F::Elem]) -> Self {
        roots.iter().fold(UniPoly::one(field.clone()), |acc, r| {
            acc * UniPoly::new(field.clone(), vec![-r.clone(), field.one()])
        })
    }

    #[inline]
    pub fn field(&self) -> &F {
        &self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    /// `None` stands for the degree of the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        UniPoly::new(self.field.clone(), self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&self.field.inv(lc).expect("leading coefficient is nonzero")),
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * self.field.from_i64(i as i64))
            .collect();
        UniPoly::new(self.field.clone(), coeffs)
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &F::Elem) -> F::Elem {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv_lc = self.field.inv(divisor.leading().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(self.field.clone()), Self::zero(self.field.clone()));
        };
        if nd < dd {
            return (Self::zero(self.field.clone()), self.clone());
        }
        let mut quot = vec![self.field.zero(); nd - dd + 1];
        for i in (dd..=nd).rev() {
            let c = rem[i].clone();
            if self.field.is_zero(&c) {
                continue;
            }
            let q = c * inv_lc.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = rem[idx].clone() - q.clone() * dc.clone();
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        (UniPoly::new(self.field.clone(), quot), UniPoly::new(self.field.clone(), rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor; `gcd(a, 0) = monic(a)`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = UniPoly::one(self.field.clone()).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(modulus);
            }
            base = (&base * &base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = UniPoly::one(self.field.clone());
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `gcd(a, a') = 1`. A vanishing derivative in positive degree (an
    /// inseparable polynomial in characteristic `p`) counts as not squarefree.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                !d.is_zero() && self.gcd(&d).degree() == Some(0)
            }
        }
    }

    /// Text form `c*t^i + ...`, highest degree first; the zero polynomial is `0`.
    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(i, c)| format!("{}*{var}^{i}", self.field.format_elem(c)))
            .collect();
        terms.join(" + ")
    }
}

impl<F: Field> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("x"))
    }
}

impl<'a, F: Field> Add<&'a UniPoly<F>> for &'a UniPoly<F> {
    type Output = UniPoly<F>;
    fn add(self, rhs: &'a UniPoly<F>) -> UniPoly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        UniPoly::new(self.field.clone(), coeffs)
    }
}

impl<'a, F: Field> Sub<&'a UniPoly<F>> for &'a UniPoly<F> {
    type Output = UniPoly<F>;
    fn sub(self, rhs: &'a UniPoly<F>) -> UniPoly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        UniPoly::new(self.field.clone(), coeffs)
    }
}

impl<'a, F: Field> Mul<&'a UniPoly<F>> for &'a UniPoly<F> {
    type Output = UniPoly<F>;
    fn mul(self, rhs: &'a UniPoly<F>) -> UniPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.field.clone());
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(self.field.clone(), out)
    }
}

impl<F: Field> Neg for UniPoly<F> {
    type Output = UniPoly<F>;
    fn neg(self) -> UniPoly<F> {
        let coeffs = self.coeffs.into_iter().map(|c| -c).collect();
        UniPoly { field: self.field, coeffs }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for UniPoly<F> {
            type Output = UniPoly<F>;
            fn $m(self, rhs: UniPoly<F>) -> UniPoly<F> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeModulus;
    use proptest::prelude::*;

    fn poly(p: u64, coeffs: &[i64]) -> UniPoly<PrimeModulus> {
        let m = PrimeModulus::new(p).unwrap();
        UniPoly::new(m, coeffs.iter().map(|&c| m.elem_i64(c)).collect())
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly(5, &[-1, 0, 1]).gcd(&poly(5, &[-1, 1])), poly(5, &[-1, 1]));
        let a = poly(5, &[2, 0, 3]);
        assert_eq!(a.gcd(&poly(5, &[])), a.monic());
        // H_5 = 1 + 4t + t^2 and its derivative 4 + 2t.
        let h5 = poly(5, &[1, 4, 1]);
        assert_eq!(h5.derivative(), poly(5, &[4, 2]));
        assert_eq!(h5.gcd(&h5.derivative()), poly(5, &[1]));
    }

    #[test]
    fn squarefree_examples() {
        assert!(poly(5, &[1, 0, 1]).is_squarefree()); // (x+2)(x+3)
        assert!(!poly(5, &[1, 2, 1]).is_squarefree()); // (x+1)^2
        assert!(!poly(5, &[0, 0, 0, 0, 0, 1]).is_squarefree()); // x^5, derivative 0
        assert!(!poly(5, &[3, 0, 0, 0, 0, 1]).is_squarefree()); // x^5 + 3 = (x+3)^5
        assert!(poly(5, &[4]).is_squarefree());
        assert!(!poly(5, &[]).is_squarefree());
    }

    #[test]
    fn degree_of_zero_is_none() {
        assert_eq!(poly(7, &[0, 0]).degree(), None);
        assert_eq!(poly(7, &[0, 3]).degree(), Some(1));
    }

    #[test]
    fn text_form() {
        assert_eq!(poly(5, &[1, 4, 1]).to_text("t"), "1*t^2 + 4*t^1 + 1*t^0");
        assert_eq!(poly(5, &[]).to_text("t"), "0");
    }

    proptest! {
        #[test]
        fn division_identity(a in prop::collection::vec(-20i64..20, 0..8),
                             b in prop::collection::vec(-20i64..20, 1..5)) {
            let a = poly(13, &a);
            let b = poly(13, &b);
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn gcd_divides_both(a in prop::collection::vec(-20i64..20, 1..7),
                            b in prop::collection::vec(-20i64..20, 1..7)) {
            let a = poly(11, &a);
            let b = poly(11, &b);
            let g = a.gcd(&b);
            prop_assume!(!g.is_zero());
            prop_assert!(a.rem(&g).is_zero());
            prop_assert!(b.rem(&g).is_zero());
        }
    }
}
