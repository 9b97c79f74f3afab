use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use super::{Field, Fp, PrimeModulus};
use crate::error::{Error, Result};
use crate::poly::UniPoly;

/// Largest supported extension degree.
pub const MAX_EXT_DEGREE: usize = 6;

#[derive(Debug, PartialEq, Eq)]
struct ExtFieldData {
    p: PrimeModulus,
    k: usize,
    /// Monic modulus, low degree first, length `k + 1`.
    modulus: Vec<u32>,
    /// `p - m_i` for `i < k`, so that `x^k = sum neg_modulus[i] x^i`.
    neg_modulus: [u64; MAX_EXT_DEGREE],
}

/// `F_{p^k} = F_p[t] / (m(t))` for the lexicographically smallest monic
/// irreducible `m` of degree `k`. Handles are interned, cheap to copy, and
/// compare by identity.
#[derive(Clone, Copy)]
pub struct ExtField {
    data: &'static ExtFieldData,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.data, other.data)
    }
}

impl Eq for ExtField {}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.data.p.get(), self.data.k)
    }
}

/// Returns the (interned) extension of degree `k` over `F_p`.
pub fn build_extension(p: PrimeModulus, k: usize) -> Result<ExtField> {
    if k == 0 || k > MAX_EXT_DEGREE {
        return Err(Error::InvalidExtensionDegree(k));
    }
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize), &'static ExtFieldData>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(data) = cache.lock().unwrap().get(&(p.get(), k)) {
        return Ok(ExtField { data });
    }
    // Search outside the lock; a racing insert produces the same polynomial.
    let modulus = smallest_irreducible(p, k);
    let mut neg_modulus = [0u64; MAX_EXT_DEGREE];
    for (i, m) in modulus[..k].iter().enumerate() {
        neg_modulus[i] = (p.get() as u64 - *m as u64) % p.get() as u64;
    }
    let mut guard = cache.lock().unwrap();
    let data = *guard
        .entry((p.get(), k))
        .or_insert_with(|| Box::leak(Box::new(ExtFieldData { p, k, modulus, neg_modulus })));
    Ok(ExtField { data })
}

/// Monic candidates are scanned with the coefficient of `x^{k-1}` most
/// significant, down to the constant term.
fn smallest_irreducible(p: PrimeModulus, k: usize) -> Vec<u32> {
    let q = p.get() as u64;
    let total = q.checked_pow(k as u32).expect("candidate space fits in u64");
    for idx in 0..total {
        let mut coeffs = vec![0u32; k + 1];
        let mut rest = idx;
        for i in 0..k {
            coeffs[i] = (rest % q) as u32;
            rest /= q;
        }
        coeffs[k] = 1;
        let poly = UniPoly::new(p, coeffs.iter().map(|&c| p.elem(c as u64)).collect());
        if is_irreducible(&poly) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Rabin's irreducibility test.
pub(crate) fn is_irreducible(f: &UniPoly<PrimeModulus>) -> bool {
    let k = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(k) => k,
    };
    let p = f.field().get() as u64;
    let x = UniPoly::x(*f.field());
    // frob[i] = x^{p^i} mod f
    let mut frob = vec![x.rem(f)];
    for i in 1..=k {
        let next = frob[i - 1].pow_mod(p, f);
        frob.push(next);
    }
    if frob[k] != x.rem(f) {
        return false;
    }
    let mut n = k;
    let mut q = 2;
    while n > 1 {
        if n % q == 0 {
            while n % q == 0 {
                n /= q;
            }
            let g = f.gcd(&(frob[k / q].clone() - x.clone()));
            if g.degree() != Some(0) {
                return false;
            }
        }
        q += 1;
    }
    true
}

impl ExtField {
    #[inline]
    pub fn prime(self) -> PrimeModulus {
        self.data.p
    }

    #[inline]
    pub fn degree(self) -> usize {
        self.data.k
    }

    /// The defining modulus, low degree first.
    pub fn modulus_coeffs(self) -> &'static [u32] {
        &self.data.modulus
    }

    /// The modulus as a polynomial over `F_p`.
    pub fn modulus_poly(self) -> UniPoly<PrimeModulus> {
        let p = self.data.p;
        UniPoly::new(p, self.data.modulus.iter().map(|&c| p.elem(c as u64)).collect())
    }

    /// Number of elements, when it fits in a `u64`.
    pub fn order(self) -> Option<u64> {
        (self.data.p.get() as u64).checked_pow(self.data.k as u32)
    }

    pub fn from_base(self, a: Fp) -> Fq {
        debug_assert_eq!(a.modulus(), self.data.p);
        let mut c = [0u32; MAX_EXT_DEGREE];
        c[0] = a.value();
        Fq { c, field: self }
    }

    /// The class of `t` (equal to `0` when `k = 1`, since the modulus is `x`).
    pub fn generator(self) -> Fq {
        let mut c = [0u32; MAX_EXT_DEGREE];
        if self.data.k > 1 {
            c[1] = 1;
        }
        Fq { c, field: self }
    }

    pub fn from_coeffs(self, coeffs: &[u32]) -> Fq {
        assert!(coeffs.len() <= self.data.k, "too many coefficients for {:?}", self);
        let p = self.data.p.get();
        let mut c = [0u32; MAX_EXT_DEGREE];
        for (dst, src) in c.iter_mut().zip(coeffs) {
            *dst = src % p;
        }
        Fq { c, field: self }
    }

    /// The element whose base-`p` digits (constant term first) spell `index`.
    pub fn element_at(self, mut index: u64) -> Fq {
        let p = self.data.p.get() as u64;
        let mut c = [0u32; MAX_EXT_DEGREE];
        for slot in c.iter_mut().take(self.data.k) {
            *slot = (index % p) as u32;
            index /= p;
        }
        Fq { c, field: self }
    }

    /// All elements in canonical order.
    pub fn elements(self) -> impl Iterator<Item = Fq> {
        let n = self.order().expect("field too large to enumerate");
        (0..n).map(move |i| self.element_at(i))
    }

    /// Parses the `c0+c1*t+c2*t^2` form produced by [`Fq`]'s `Display`.
    pub fn parse_elem(self, s: &str) -> Result<Fq> {
        let err = || Error::Parse { what: "field element", input: s.to_string() };
        let p = self.data.p.get() as u64;
        let mut c = [0u32; MAX_EXT_DEGREE];
        for term in s.split('+') {
            let term = term.trim();
            let (coef, power) = match term.split_once('*') {
                None => (term, 0usize),
                Some((coef, var)) => {
                    let power = match var {
                        "t" => 1,
                        _ => var.strip_prefix("t^").and_then(|e| e.parse().ok()).ok_or_else(err)?,
                    };
                    (coef, power)
                }
            };
            let v: u64 = coef.parse().map_err(|_| err())?;
            if power >= self.data.k || v >= p {
                return Err(err());
            }
            c[power] = v as u32;
        }
        Ok(Fq { c, field: self })
    }
}

/// An element of `F_{p^k}`: a residue of degree `< k` in `t`.
#[derive(Clone, Copy)]
pub struct Fq {
    c: [u32; MAX_EXT_DEGREE],
    field: ExtField,
}

impl Fq {
    #[inline]
    pub fn field(&self) -> ExtField {
        self.field
    }

    /// Coefficients of `1, t, ..., t^{k-1}`.
    pub fn coeffs(&self) -> &[u32] {
        &self.c[..self.field.data.k]
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    /// `Some(a)` when the element lies in the prime field.
    pub fn as_base(&self) -> Option<Fp> {
        if self.c[1..].iter().all(|&x| x == 0) {
            Some(self.field.data.p.elem(self.c[0] as u64))
        } else {
            None
        }
    }

    pub fn pow(self, mut e: u64) -> Fq {
        let mut base = self;
        let mut acc = self.field.from_base(self.field.data.p.elem(1));
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    /// `a^p`.
    pub fn frobenius(self) -> Fq {
        self.pow(self.field.data.p.get() as u64)
    }

    /// Inverse through the norm: `a^{-1} = (a^p a^{p^2} ... a^{p^{k-1}}) / N(a)`.
    pub fn inverse(self) -> Result<Fq> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let mut conj = self.field.from_base(self.field.data.p.elem(1));
        let mut power = self;
        for _ in 1..self.field.data.k {
            power = power.frobenius();
            conj *= power;
        }
        let norm = (self * conj).as_base().expect("norm lies in the prime field");
        let scale = self.field.from_base(norm.inverse()?);
        Ok(conj * scale)
    }

    /// Multiplies by an integer.
    pub fn scale(self, n: u64) -> Fq {
        let p = self.field.data.p.get() as u64;
        let n = n % p;
        let mut c = self.c;
        for x in c.iter_mut() {
            *x = ((*x as u64 * n) % p) as u32;
        }
        Fq { c, field: self.field }
    }
}

impl PartialEq for Fq {
    #[inline]
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.field == other.field
    }
}

impl Eq for Fq {}

impl Hash for Fq {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl PartialOrd for Fq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Order of the integer encoding `sum c_i p^i`.
impl Ord for Fq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.iter().rev().cmp(other.c.iter().rev())
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs().iter().enumerate() {
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "+{c}*t")?,
                _ => write!(f, "+{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self, self.field)
    }
}

impl Add for Fq {
    type Output = Fq;
    #[inline]
    fn add(self, rhs: Fq) -> Fq {
        debug_assert!(self.field == rhs.field);
        let p = self.field.data.p.get();
        let mut c = self.c;
        for (x, y) in c.iter_mut().zip(rhs.c.iter()) {
            let s = *x as u64 + *y as u64;
            *x = if s >= p as u64 { (s - p as u64) as u32 } else { s as u32 };
        }
        Fq { c, field: self.field }
    }
}

impl Neg for Fq {
    type Output = Fq;
    #[inline]
    fn neg(self) -> Fq {
        let p = self.field.data.p.get();
        let mut c = self.c;
        for x in c.iter_mut() {
            if *x != 0 {
                *x = p - *x;
            }
        }
        Fq { c, field: self.field }
    }
}

impl Sub for Fq {
    type Output = Fq;
    #[inline]
    fn sub(self, rhs: Fq) -> Fq {
        self + (-rhs)
    }
}

impl Mul for Fq {
    type Output = Fq;
    #[inline]
    fn mul(self, rhs: Fq) -> Fq {
        debug_assert!(self.field == rhs.field);
        let data = self.field.data;
        let k = data.k;
        let p = data.p.get() as u64;
        let mut prod = [0u64; 2 * MAX_EXT_DEGREE - 1];
        for i in 0..k {
            let a = self.c[i] as u64;
            if a == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + a * rhs.c[j] as u64) % p;
            }
        }
        for d in (k..2 * k - 1).rev() {
            let t = prod[d];
            if t == 0 {
                continue;
            }
            for i in 0..k {
                prod[d - k + i] = (prod[d - k + i] + t * data.neg_modulus[i]) % p;
            }
        }
        let mut c = [0u32; MAX_EXT_DEGREE];
        for i in 0..k {
            c[i] = prod[i] as u32;
        }
        Fq { c, field: self.field }
    }
}

impl AddAssign for Fq {
    #[inline]
    fn add_assign(&mut self, rhs: Fq) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fq {
    #[inline]
    fn sub_assign(&mut self, rhs: Fq) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fq {
    #[inline]
    fn mul_assign(&mut self, rhs: Fq) {
        *self = *self * rhs;
    }
}

impl Field for ExtField {
    type Elem = Fq;

    fn zero(&self) -> Fq {
        Fq { c: [0; MAX_EXT_DEGREE], field: *self }
    }
    fn one(&self) -> Fq {
        self.from_base(self.data.p.elem(1))
    }
    fn from_i64(&self, n: i64) -> Fq {
        self.from_base(self.data.p.elem_i64(n))
    }
    fn inv(&self, a: &Fq) -> Result<Fq> {
        a.inverse()
    }
    fn characteristic(&self) -> u64 {
        self.data.p.get() as u64
    }
    fn format_elem(&self, a: &Fq) -> String {
        a.to_string()
    }
    fn is_zero(&self, a: &Fq) -> bool {
        Fq::is_zero(a)
    }
    fn pow(&self, a: &Fq, e: u64) -> Fq {
        a.pow(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn chosen_moduli() {
        assert_eq!(build_extension(prime(5), 1).unwrap().modulus_coeffs(), &[0, 1]);
        assert_eq!(build_extension(prime(3), 2).unwrap().modulus_coeffs(), &[1, 0, 1]);
        assert_eq!(build_extension(prime(5), 2).unwrap().modulus_coeffs(), &[2, 0, 1]);
    }

    /// Brute force: a monic quadratic or cubic is irreducible iff it has no root.
    #[test]
    fn chosen_modulus_is_lex_smallest_irreducible() {
        for p in [3u64, 5, 7, 11, 13] {
            let m = prime(p);
            for k in [2usize, 3] {
                let chosen = build_extension(m, k).unwrap().modulus_coeffs().to_vec();
                let has_root = |c: &[u32]| {
                    (0..p).any(|x| {
                        let v = c.iter().rev().fold(0u64, |acc, &ci| (acc * x + ci as u64) % p);
                        v == 0
                    })
                };
                assert!(!has_root(&chosen));
                // Every candidate smaller in the (c_{k-1}, ..., c_0) order has a root.
                let key = |c: &[u32]| c[..k].iter().rev().cloned().collect::<Vec<_>>();
                let total = p.pow(k as u32);
                for idx in 0..total {
                    let mut c = vec![0u32; k + 1];
                    let mut r = idx;
                    for slot in c.iter_mut().take(k) {
                        *slot = (r % p) as u32;
                        r /= p;
                    }
                    c[k] = 1;
                    if key(&c) < key(&chosen) {
                        assert!(has_root(&c), "p={p} k={k} {c:?} precedes {chosen:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn rabin_agrees_with_degree_four_brute_force() {
        // x^4 + 1 over F_3 factors as (x^2+x+2)(x^2+2x+2) without roots.
        let m = prime(3);
        let f = UniPoly::new(m, vec![m.elem(1), m.elem(0), m.elem(0), m.elem(0), m.elem(1)]);
        assert!(!is_irreducible(&f));
        let field = build_extension(m, 4).unwrap();
        assert!(is_irreducible(&field.modulus_poly()));
    }

    #[test]
    fn frobenius_examples() {
        let f9 = build_extension(prime(3), 2).unwrap();
        let t = f9.generator();
        assert_eq!(t.frobenius(), -t);
        let base = f9.from_base(prime(3).elem(2));
        assert_eq!(base.frobenius(), base);
        for a in f9.elements() {
            assert_eq!(a.frobenius().frobenius(), a);
        }
    }

    #[test]
    fn every_nonzero_element_inverts() {
        for (p, k) in [(3u64, 2usize), (5, 2), (3, 3), (7, 2), (2_147_483_647, 2)] {
            let field = build_extension(prime(p), k).unwrap();
            let sample: Vec<Fq> = if p < 100 {
                field.elements().collect()
            } else {
                (1..50u64).map(|i| field.from_coeffs(&[(i * 7919) as u32, (i * 104_729) as u32])).collect()
            };
            for a in sample.into_iter().filter(|a| !a.is_zero()) {
                assert_eq!(a * a.inverse().unwrap(), field.one());
            }
            assert_eq!(field.zero().inverse(), Err(Error::ZeroInverse));
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic_of_expected_order() {
        let field = build_extension(prime(5), 2).unwrap();
        for a in field.elements().filter(|a| !a.is_zero()) {
            assert_eq!(a.pow(24), field.one());
        }
    }

    #[test]
    fn text_round_trip() {
        let field = build_extension(prime(7), 3).unwrap();
        for a in field.elements().step_by(17) {
            assert_eq!(field.parse_elem(&a.to_string()).unwrap(), a);
        }
        assert_eq!(field.from_coeffs(&[3, 0, 5]).to_string(), "3+0*t+5*t^2");
        assert!(field.parse_elem("3+9*t").is_err());
        assert!(field.parse_elem("1*t^3").is_err());
    }

    #[test]
    fn ordering_follows_encoding() {
        let field = build_extension(prime(5), 2).unwrap();
        let all: Vec<Fq> = field.elements().collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rejects_bad_degrees() {
        assert_eq!(build_extension(prime(3), 0), Err(Error::InvalidExtensionDegree(0)));
        assert!(build_extension(prime(3), MAX_EXT_DEGREE + 1).is_err());
    }
}
