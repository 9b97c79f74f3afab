//! Exact coefficient fields.
//!
//! A [`Field`] value is a lightweight context (the prime, the extension
//! modulus, or the rationals) and its [`Field::Elem`] type carries enough of
//! that context to support the arithmetic operators directly. Polynomials and
//! matrices elsewhere in the crate are generic over `Field`.

mod ext;
mod prime;
mod rational;

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Result;

pub use ext::{build_extension, ExtField, Fq, MAX_EXT_DEGREE};
pub use prime::{Fp, PrimeModulus};
pub use rational::{reduce_rational_mod_p, Rationals};

/// A field context with exact element arithmetic.
pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    type Elem: Clone
        + PartialEq
        + Eq
        + Hash
        + Debug
        + Send
        + Sync
        + Add<Output = Self::Elem>
        + Sub<Output = Self::Elem>
        + Mul<Output = Self::Elem>
        + Neg<Output = Self::Elem>;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of an integer under the canonical ring map.
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    /// `0` for characteristic zero.
    fn characteristic(&self) -> u64;
    /// Canonical text form of an element.
    fn format_elem(&self, a: &Self::Elem) -> String;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(a.clone() * self.inv(b)?)
    }
}

/// Fields into which the elements of `F` embed canonically.
pub trait Embed<F: Field>: Field {
    fn embed(&self, a: &F::Elem) -> Self::Elem;
}

impl Embed<PrimeModulus> for PrimeModulus {
    fn embed(&self, a: &Fp) -> Fp {
        *a
    }
}

impl Embed<PrimeModulus> for ExtField {
    fn embed(&self, a: &Fp) -> Fq {
        self.from_base(*a)
    }
}

impl Embed<ExtField> for ExtField {
    fn embed(&self, a: &Fq) -> Fq {
        *a
    }
}

impl Embed<Rationals> for Rationals {
    fn embed(&self, a: &num_rational::BigRational) -> num_rational::BigRational {
        a.clone()
    }
}
