use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Serialize, Serializer};

use super::Field;
use crate::error::{Error, Result};

/// An odd prime `p < 2^32`; the context for `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u32);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeModulus(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// `(p - 1) / 2`, the exponent of the Cartier-Manin expansion.
    #[inline]
    pub fn half(self) -> u32 {
        (self.0 - 1) / 2
    }

    #[inline]
    pub fn elem(self, v: u64) -> Fp {
        Fp { v: (v % self.0 as u64) as u32, p: self.0 }
    }

    pub fn elem_i64(self, v: i64) -> Fp {
        let p = self.0 as i64;
        Fp { v: v.rem_euclid(p) as u32, p: self.0 }
    }

    /// All elements in increasing canonical order.
    pub fn elements(self) -> impl Iterator<Item = Fp> {
        (0..self.0).map(move |v| Fp { v, p: self.0 })
    }
}

impl fmt::Debug for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0)
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for PrimeModulus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u32(self.0)
    }
}

/// Deterministic Miller-Rabin; the witness set is exact for `n < 3.3e24`.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An element of `F_p`, stored as its canonical residue.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u32,
    p: u32,
}

impl Fp {
    #[inline]
    pub fn value(self) -> u32 {
        self.v
    }

    #[inline]
    pub fn modulus(self) -> PrimeModulus {
        PrimeModulus(self.p)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.v == 0
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp { v: 1, p: self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inverse(self) -> Result<Fp> {
        if self.v == 0 {
            return Err(Error::ZeroInverse);
        }
        let (mut r0, mut r1) = (self.p as i64, self.v as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(Fp { v: t0.rem_euclid(self.p as i64) as u32, p: self.p })
    }

    /// Multiplies by an integer without materializing it as an element.
    #[inline]
    pub fn scale(self, n: u64) -> Fp {
        let n = n % self.p as u64;
        Fp { v: ((self.v as u64 * n) % self.p as u64) as u32, p: self.p }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.v, self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        let s = self.v as u64 + rhs.v as u64;
        let p = self.p as u64;
        Fp { v: (if s >= p { s - p } else { s }) as u32, p: self.p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        let v = if self.v >= rhs.v {
            self.v - rhs.v
        } else {
            (self.v as u64 + self.p as u64 - rhs.v as u64) as u32
        };
        Fp { v, p: self.p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp { v: ((self.v as u64 * rhs.v as u64) % self.p as u64) as u32, p: self.p }
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
}

impl AddAssign for Fp {
    #[inline]
    fn add_assign(&mut self, rhs: Fp) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fp {
    #[inline]
    fn sub_assign(&mut self, rhs: Fp) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fp {
    #[inline]
    fn mul_assign(&mut self, rhs: Fp) {
        *self = *self * rhs;
    }
}

impl Field for PrimeModulus {
    type Elem = Fp;

    fn zero(&self) -> Fp {
        Fp { v: 0, p: self.0 }
    }
    fn one(&self) -> Fp {
        Fp { v: 1, p: self.0 }
    }
    fn from_i64(&self, n: i64) -> Fp {
        self.elem_i64(n)
    }
    fn inv(&self, a: &Fp) -> Result<Fp> {
        a.inverse()
    }
    fn characteristic(&self) -> u64 {
        self.0 as u64
    }
    fn format_elem(&self, a: &Fp) -> String {
        a.v.to_string()
    }
    fn is_zero(&self, a: &Fp) -> bool {
        a.v == 0
    }
    fn pow(&self, a: &Fp, e: u64) -> Fp {
        a.pow(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(p: u64, v: u64) -> Fp {
        PrimeModulus::new(p).unwrap().elem(v)
    }

    #[test]
    fn rejects_non_odd_primes() {
        for bad in [0u64, 1, 2, 4, 9, 15, 561, 1 << 32] {
            assert_eq!(PrimeModulus::new(bad), Err(Error::InvalidModulus(bad)));
        }
        assert!(PrimeModulus::new(2_147_483_647).is_ok());
        assert!(PrimeModulus::new(4_294_967_291).is_ok());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(fp(5, 2).inverse().unwrap(), fp(5, 3));
        assert_eq!(fp(3, 1).inverse().unwrap(), fp(3, 1));
        assert_eq!(fp(7, 4).inverse().unwrap(), fp(7, 2));
        assert_eq!(fp(7, 0).inverse(), Err(Error::ZeroInverse));
    }

    #[test]
    fn large_modulus_has_no_overflow() {
        let p = 4_294_967_291u64;
        let a = fp(p, p - 1);
        assert_eq!(a * a, fp(p, 1));
        assert_eq!(a + a, fp(p, p - 2));
        assert_eq!(a * a.inverse().unwrap(), fp(p, 1));
    }

    proptest! {
        #[test]
        fn inverse_is_two_sided(v in 1u64..10_007) {
            let a = fp(10_007, v);
            prop_assert_eq!(a * a.inverse().unwrap(), fp(10_007, 1));
        }

        #[test]
        fn elem_i64_matches_rem_euclid(v in -100_000i64..100_000) {
            let m = PrimeModulus::new(97).unwrap();
            prop_assert_eq!(m.elem_i64(v).value() as i64, v.rem_euclid(97));
        }
    }
}
