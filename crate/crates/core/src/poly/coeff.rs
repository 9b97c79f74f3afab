use std::ops::Mul;

use super::TriPoly;
use crate::field::Field;

/// A polynomial in `x` whose coefficients are polynomials in `z1, z2, z3`.
#[derive(Clone, PartialEq, Debug)]
pub struct CoeffPoly<F: Field> {
    field: F,
    coeffs: Vec<TriPoly<F>>,
}

impl<F: Field> CoeffPoly<F> {
    pub fn new(field: F, mut coeffs: Vec<TriPoly<F>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        CoeffPoly { field, coeffs }
    }

    pub fn one(field: F) -> Self {
        let one = TriPoly::one(field.clone());
        CoeffPoly { field, coeffs: vec![one] }
    }

    /// `x - c` for a coefficient `c`.
    pub fn linear_root(field: F, root: TriPoly<F>) -> Self {
        let one = TriPoly::one(field.clone());
        CoeffPoly::new(field, vec![-root, one])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The `x^k` coefficient.
    pub fn coeff(&self, k: usize) -> TriPoly<F> {
        self.coeffs.get(k).cloned().unwrap_or_else(|| TriPoly::zero(self.field.clone()))
    }

    pub fn coeffs(&self) -> &[TriPoly<F>] {
        &self.coeffs
    }

    /// `a^e` by binary powering.
    pub fn power(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = CoeffPoly::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl<'a, F: Field> Mul<&'a CoeffPoly<F>> for &'a CoeffPoly<F> {
    type Output = CoeffPoly<F>;
    fn mul(self, rhs: &'a CoeffPoly<F>) -> CoeffPoly<F> {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return CoeffPoly::new(self.field.clone(), Vec::new());
        }
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut out = vec![TriPoly::zero(self.field.clone()); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        CoeffPoly::new(self.field.clone(), out)
    }
}

impl<F: Field> Mul for CoeffPoly<F> {
    type Output = CoeffPoly<F>;
    fn mul(self, rhs: CoeffPoly<F>) -> CoeffPoly<F> {
        &self * &rhs
    }
}
