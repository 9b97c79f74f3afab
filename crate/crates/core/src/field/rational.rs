use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Field, Fp, PrimeModulus};
use crate::error::{Error, Result};

/// The rationals, backed by `num_rational::BigRational`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(Error::ZeroInverse)
        } else {
            Ok(a.recip())
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn format_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

fn big_mod(n: &BigInt, p: u32) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue below p")
}

/// Image of a `p`-integral rational in `F_p`.
pub fn reduce_rational_mod_p(r: &BigRational, p: PrimeModulus) -> Result<Fp> {
    let den = big_mod(r.denom(), p.get());
    if den == 0 {
        return Err(Error::DenominatorDivisibleByP { denominator: r.denom().abs().to_string(), p: p.get() });
    }
    let num = big_mod(r.numer(), p.get());
    Ok(p.elem(num) * p.elem(den).inverse()?)
}
