//! Truncated Lauricella `F_D` series attached to the genus-2 Cartier-Manin
//! entries, their support slabs, and the normalization constant relating the
//! two.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{reduce_rational_mod_p, Fp, PrimeModulus};
use crate::poly::{Monomial, TriPoly};
use crate::FpTriPoly;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parameters `a, b1, b2, b3, c` of a three-variable Lauricella series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HGParams {
    pub a: BigRational,
    pub b: [BigRational; 3],
    pub c: BigRational,
}

impl HGParams {
    /// `a = 5/2 - j`, `b_k = 1/2`, `c = 3 - j`.
    pub fn for_column(j: usize) -> Self {
        let j = j as i64;
        let half = rat(1, 2);
        HGParams { a: rat(5 - 2 * j, 2), b: [half.clone(), half.clone(), half], c: rat(3 - j, 1) }
    }

    /// `(a)_{|n|} prod (b_k)_{n_k} / ((c)_{|n|} prod n_k!)`.
    pub fn coeff(&self, n: [u32; 3]) -> BigRational {
        let s: u32 = n.iter().sum();
        let mut num = pochhammer(&self.a, s);
        let mut den = pochhammer(&self.c, s);
        for k in 0..3 {
            num *= pochhammer(&self.b[k], n[k]);
            den *= pochhammer(&BigRational::one(), n[k]);
        }
        num / den
    }
}

/// Rising factorial `x(x+1)...(x+n-1)`.
pub fn pochhammer(x: &BigRational, n: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = x.clone();
    for _ in 0..n {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

fn check_index(name: &str, v: usize) -> Result<()> {
    if (1..=2).contains(&v) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be 1 or 2, got {v}")))
    }
}

/// `A^{(i,j)}_n`; the value does not depend on `i`.
pub fn coeff_a(i: usize, j: usize, n: [u32; 3]) -> Result<BigRational> {
    check_index("i", i)?;
    check_index("j", j)?;
    Ok(HGParams::for_column(j).coeff(n))
}

/// Exponents `n` with every `n_k <= (p-1)/2` and `d' - (p-1)/2 <= |n| <= d'`,
/// where `d' = 5(p-1)/2 - ip + j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SupportSet {
    pub p: PrimeModulus,
    pub i: usize,
    pub j: usize,
    pub d_prime: i64,
}

impl SupportSet {
    pub fn new(p: PrimeModulus, i: usize, j: usize) -> Result<Self> {
        check_index("i", i)?;
        check_index("j", j)?;
        let d_prime = 5 * p.half() as i64 - (i as i64) * p.get() as i64 + j as i64;
        Ok(SupportSet { p, i, j, d_prime })
    }

    fn sum_range(&self) -> (i64, i64) {
        (self.d_prime - self.p.half() as i64, self.d_prime)
    }

    pub fn contains(&self, n: [u32; 3]) -> bool {
        let (lo, hi) = self.sum_range();
        let s: i64 = n.iter().map(|&v| v as i64).sum();
        n.iter().all(|&v| v <= self.p.half()) && lo <= s && s <= hi
    }

    /// Members in ascending grevlex order, enumerated slab by slab.
    pub fn members(&self) -> Vec<Monomial> {
        let h = self.p.half() as i64;
        let (lo, hi) = self.sum_range();
        let mut out = Vec::new();
        for s in lo.max(0)..=hi.min(3 * h) {
            for n1 in 0..=h.min(s) {
                for n2 in 0..=h.min(s - n1) {
                    let n3 = s - n1 - n2;
                    if n3 <= h {
                        out.push(Monomial([n1 as u32, n2 as u32, n3 as u32]));
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn summary(&self) -> SupportSummary {
        SupportSummary {
            p: self.p.get(),
            i: self.i,
            j: self.j,
            d_prime: self.d_prime,
            size: self.members().len(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SupportSummary {
    pub p: u32,
    pub i: usize,
    pub j: usize,
    pub d_prime: i64,
    pub size: usize,
}

/// The truncation of the `(i, j)` series to its support, reduced mod `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    pub support: SupportSet,
    pub poly: FpTriPoly,
}

pub fn truncated_series(p: PrimeModulus, i: usize, j: usize) -> Result<TruncatedSeries> {
    let support = SupportSet::new(p, i, j)?;
    let params = HGParams::for_column(j);
    let mut poly = TriPoly::zero(p);
    for m in support.members() {
        poly.add_term(m, reduce_rational_mod_p(&params.coeff(m.0), p)?);
    }
    Ok(TruncatedSeries { support, poly })
}

/// `(-1)^{(p-1)/2} j / i` in `F_p`.
pub fn normalization_constant(p: PrimeModulus, i: usize, j: usize) -> Result<Fp> {
    check_index("i", i)?;
    check_index("j", j)?;
    let sign = if p.half() % 2 == 0 { 1 } else { -1 };
    Ok(p.elem_i64(sign * j as i64) * p.elem(i as u64).inverse()?)
}

/// `n!!`, with `n!! = 1` for `n <= 0`.
pub fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

/// The same constant through the double-factorial expression
/// `((5-2i)p-1)!!/((5-2i)p-2)!! * (3-2j)!!/(4-2j)!!`, reduced mod `p`.
pub fn normalization_constant_oracle(p: PrimeModulus, i: usize, j: usize) -> Result<Fp> {
    check_index("i", i)?;
    check_index("j", j)?;
    let m = (5 - 2 * i as i64) * p.get() as i64;
    let j = j as i64;
    let r = BigRational::new(double_factorial(m - 1), double_factorial(m - 2))
        * BigRational::new(double_factorial(3 - 2 * j), double_factorial(4 - 2 * j));
    reduce_rational_mod_p(&r, p)
}

/// `c_{ip-j}` rebuilt as the normalization constant times the truncated series.
pub fn cm_via_hypergeometric(p: PrimeModulus, i: usize, j: usize) -> Result<FpTriPoly> {
    let series = truncated_series(p, i, j)?;
    Ok(series.poly.scale(&normalization_constant(p, i, j)?))
}

/// True when every coefficient of the truncation reduces mod `p`.
pub fn support_is_p_integral(p: PrimeModulus, i: usize, j: usize) -> Result<bool> {
    let support = SupportSet::new(p, i, j)?;
    let params = HGParams::for_column(j);
    Ok(support.members().iter().all(|m| {
        let c = params.coeff(m.0);
        c.is_zero() || reduce_rational_mod_p(&c, p).is_ok()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartier::{cm_entries, odd_primes_up_to};
    use proptest::prelude::*;

    fn prime(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(1, 2), 0), rat(1, 1));
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
        assert_eq!(pochhammer(&rat(1, 1), 5), rat(120, 1));
        assert_eq!(pochhammer(&rat(-2, 1), 3), rat(0, 1));
    }

    #[test]
    fn coefficient_examples() {
        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            assert_eq!(coeff_a(i, j, [0, 0, 0]).unwrap(), rat(1, 1));
        }
        assert_eq!(coeff_a(2, 2, [1, 0, 0]).unwrap(), rat(1, 4));
        assert_eq!(coeff_a(1, 2, [1, 1, 1]).unwrap(), rat(5, 128));
        assert!(coeff_a(3, 1, [0, 0, 0]).is_err());
    }

    #[test]
    fn support_examples() {
        let s = SupportSet::new(prime(3), 2, 1).unwrap();
        assert_eq!(s.d_prime, 0);
        assert_eq!(s.members(), vec![Monomial([0, 0, 0])]);
        let s = SupportSet::new(prime(3), 1, 2).unwrap();
        assert_eq!(s.d_prime, 4);
        assert_eq!(s.members(), vec![Monomial([1, 1, 1])]);
        let s = SupportSet::new(prime(5), 2, 2).unwrap();
        assert_eq!(s.d_prime, 2);
        assert_eq!(s.summary().size, 10);
        assert!(s.members().iter().all(|m| m.degree() <= 2));
    }

    #[test]
    fn members_agree_with_cube_filter() {
        for p in odd_primes_up_to(13) {
            for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                let s = SupportSet::new(p, i, j).unwrap();
                let h = p.half();
                let mut cube = Vec::new();
                for a in 0..=h {
                    for b in 0..=h {
                        for c in 0..=h {
                            if s.contains([a, b, c]) {
                                cube.push(Monomial([a, b, c]));
                            }
                        }
                    }
                }
                cube.sort();
                assert_eq!(s.members(), cube);
            }
        }
    }

    #[test]
    fn truncated_series_examples() {
        assert_eq!(truncated_series(prime(3), 2, 1).unwrap().poly, TriPoly::one(prime(3)));
        assert_eq!(truncated_series(prime(3), 1, 2).unwrap().poly, TriPoly::parse(prime(3), "1*z1*z2*z3").unwrap());
        let s = truncated_series(prime(5), 2, 2).unwrap();
        assert_eq!(s.poly.coeff(Monomial([1, 0, 0])), prime(5).elem(4));
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(normalization_constant(prime(3), 2, 1).unwrap(), prime(3).elem(1));
        assert_eq!(normalization_constant(prime(5), 1, 1).unwrap(), prime(5).elem(1));
        assert_eq!(normalization_constant(prime(5), 2, 1).unwrap(), prime(5).elem(3));
    }

    #[test]
    fn double_factorial_conventions() {
        assert_eq!(double_factorial(0), BigInt::one());
        assert_eq!(double_factorial(-1), BigInt::one());
        assert_eq!(double_factorial(7), BigInt::from(105));
        assert_eq!(double_factorial(8), BigInt::from(384));
    }

    #[test]
    fn normalization_paths_agree() {
        for p in odd_primes_up_to(13) {
            for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                assert_eq!(
                    normalization_constant(p, i, j).unwrap(),
                    normalization_constant_oracle(p, i, j).unwrap(),
                    "p={p} ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn two_paths_agree_for_small_primes() {
        for p in [3u64, 5, 7] {
            let cm = cm_entries(prime(p), 2).unwrap();
            for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                assert_eq!(&cm_via_hypergeometric(prime(p), i, j).unwrap(), cm.entry(i, j), "p={p} ({i},{j})");
            }
        }
    }

    #[test]
    fn entries_live_in_support() {
        for p in [3u64, 5, 7, 11] {
            let cm = cm_entries(prime(p), 2).unwrap();
            for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                let s = SupportSet::new(prime(p), i, j).unwrap();
                assert!(cm.entry(i, j).monomials().all(|m| s.contains(m.0)));
            }
        }
    }

    #[test]
    fn supports_are_p_integral() {
        for p in odd_primes_up_to(13) {
            for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                assert!(support_is_p_integral(p, i, j).unwrap());
            }
        }
    }

    fn exponent() -> impl Strategy<Value = [u32; 3]> {
        prop::array::uniform3(0u32..8)
    }

    proptest! {
        #[test]
        fn standard_relation(n in exponent(), j in 1usize..=2, k in 0usize..3) {
            let s: i64 = n.iter().map(|&v| v as i64).sum();
            let mut up = n;
            up[k] += 1;
            let nk = n[k] as i64;
            let factor = (rat(5 - 2 * j as i64, 2) + rat(s, 1)) * (rat(1, 2) + rat(nk, 1))
                / ((rat(3 - j as i64, 1) + rat(s, 1)) * rat(1 + nk, 1));
            prop_assert_eq!(coeff_a(1, j, up).unwrap(), factor * coeff_a(1, j, n).unwrap());
        }

        #[test]
        fn interchange_relations(n in exponent(), i in 1usize..=2) {
            let s: i64 = n.iter().map(|&v| v as i64).sum();
            prop_assert_eq!(
                coeff_a(i, 1, n).unwrap(),
                rat(1 + 2 * s, 1 + s) * coeff_a(i, 2, n).unwrap()
            );
            let mut up = n;
            up[0] += 1;
            let n1 = n[0] as i64;
            prop_assert_eq!(
                coeff_a(i, 2, up).unwrap(),
                (rat(1, 2) + rat(n1, 1)) / rat(2 * (1 + n1), 1) * coeff_a(i, 1, n).unwrap()
            );
        }
    }
}
