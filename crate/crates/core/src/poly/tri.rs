use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Embed, Field, PrimeModulus};

/// An exponent triple `z1^a z2^b z3^c`, ordered by graded reverse
/// lexicographic order with `z1 > z2 > z3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    /// `z_var` for `var` in `1..=3`.
    pub fn var(var: usize) -> Monomial {
        let mut e = [0; 3];
        e[var - 1] = 1;
        Monomial(e)
    }

    #[inline]
    pub fn degree(self) -> u32 {
        self.0[0] + self.0[1] + self.0[2]
    }

    #[inline]
    pub fn divides(self, other: Monomial) -> bool {
        self.0[0] <= other.0[0] && self.0[1] <= other.0[1] && self.0[2] <= other.0[2]
    }

    /// `other / self` when `self` divides `other`.
    #[inline]
    pub fn quotient_of(self, other: Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial([other.0[0] - self.0[0], other.0[1] - self.0[1], other.0[2] - self.0[2]]))
        } else {
            None
        }
    }

    #[inline]
    pub fn lcm(self, other: Monomial) -> Monomial {
        Monomial([self.0[0].max(other.0[0]), self.0[1].max(other.0[1]), self.0[2].max(other.0[2])])
    }

    #[inline]
    pub fn is_coprime(self, other: Monomial) -> bool {
        (0..3).all(|i| self.0[i] == 0 || other.0[i] == 0)
    }

    /// Is this a power of a single variable (or `1`)?
    pub fn pure_power_var(self) -> Option<usize> {
        match self.0 {
            [_, 0, 0] => Some(1),
            [0, _, 0] => Some(2),
            [0, 0, _] => Some(3),
            _ => None,
        }
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    #[inline]
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0[2].cmp(&self.0[2]))
            .then_with(|| other.0[1].cmp(&self.0[1]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z1^{}*z2^{}*z3^{}", self.0[0], self.0[1], self.0[2])
    }
}

/// A permutation of the three variables: `z_i` is sent to `z_{perm[i-1]}`.
pub type VarPermutation = [usize; 3];

/// All six permutations of `{1, 2, 3}`.
pub const ALL_PERMUTATIONS: [VarPermutation; 6] =
    [[1, 2, 3], [2, 1, 3], [1, 3, 2], [3, 2, 1], [2, 3, 1], [3, 1, 2]];

/// Sparse polynomial in `z1, z2, z3`; zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct TriPoly<F: Field> {
    field: F,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> TriPoly<F> {
    pub fn zero(field: F) -> Self {
        TriPoly { field, terms: BTreeMap::new() }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::monomial(field, c, Monomial::ONE)
    }

    pub fn one(field: F) -> Self {
        let c = field.one();
        Self::constant(field, c)
    }

    /// The variable `z_var`, `var` in `1..=3`.
    pub fn var(field: F, var: usize) -> Self {
        let c = field.one();
        Self::monomial(field, c, Monomial::var(var))
    }

    pub fn monomial(field: F, c: F::Elem, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !field.is_zero(&c) {
            terms.insert(m, c);
        }
        TriPoly { field, terms }
    }

    /// Sums the given terms, merging repeated monomials.
    pub fn from_terms(field: F, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let mut out = Self::zero(field);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if self.field.is_zero(&sum) {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    #[inline]
    pub fn field(&self) -> &F {
        &self.field
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F::Elem)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff(&self, m: Monomial) -> F::Elem {
        self.terms.get(&m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Largest term under grevlex.
    pub fn leading_term(&self) -> Option<(Monomial, &F::Elem)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Largest exponent of `z_var` that occurs.
    pub fn var_degree(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var - 1]).max()
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(self.field.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (*m, a.clone() * c.clone()))
            .filter(|(_, a)| !self.field.is_zero(a))
            .collect();
        TriPoly { field: self.field.clone(), terms }
    }

    /// Multiplies by an integer.
    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&self.field.from_i64(n))
    }

    /// Multiplies by the monomial `c * m`.
    pub fn mul_term(&self, m: Monomial, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(self.field.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, a)| (*k * m, a.clone() * c.clone()))
            .filter(|(_, a)| !self.field.is_zero(a))
            .collect();
        TriPoly { field: self.field.clone(), terms }
    }

    /// Multiplies by `z_var`.
    pub fn mul_var(&self, var: usize) -> Self {
        let terms = self.terms.iter().map(|(k, a)| (*k * Monomial::var(var), a.clone())).collect();
        TriPoly { field: self.field.clone(), terms }
    }

    /// Formal partial derivative in `z_var`; exponents act through the
    /// canonical map `Z -> F`, so `d/dz1 z1^p = 0` in characteristic `p`.
    pub fn partial_derivative(&self, var: usize) -> Self {
        let i = var - 1;
        let mut out = Self::zero(self.field.clone());
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[i] -= 1;
            out.add_term(dm, c.clone() * self.field.from_i64(e as i64));
        }
        out
    }

    /// `a^e` by binary powering.
    pub fn power(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field.clone());
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

    /// Evaluates at a point of a field containing the coefficients.
    pub fn evaluate<G: Embed<F>>(&self, target: &G, point: &[G::Elem; 3]) -> G::Elem {
        if self.is_zero() {
            return target.zero();
        }
        let powers: Vec<Vec<G::Elem>> = (0..3)
            .map(|i| {
                let max = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0) as usize;
                let mut pw = Vec::with_capacity(max + 1);
                pw.push(target.one());
                for k in 1..=max {
                    let next = pw[k - 1].clone() * point[i].clone();
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let term = target.embed(c)
                * powers[0][m.0[0] as usize].clone()
                * powers[1][m.0[1] as usize].clone()
                * powers[2][m.0[2] as usize].clone();
            acc = acc + term;
        }
        acc
    }

    /// Substitutes `z_i -> z_{perm[i-1]}`.
    pub fn permute_variables(&self, perm: VarPermutation) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = [0u32; 3];
                for i in 0..3 {
                    e[perm[i] - 1] = m.0[i];
                }
                (Monomial(e), c.clone())
            })
            .collect();
        TriPoly { field: self.field.clone(), terms }
    }

    /// Invariance under all six variable permutations.
    pub fn is_symmetric(&self) -> bool {
        ALL_PERMUTATIONS.iter().all(|&s| self.permute_variables(s) == *self)
    }

    /// Applies a coefficient map into another field, dropping zeros.
    pub fn try_map_coeffs<G: Field>(
        &self,
        target: G,
        mut f: impl FnMut(&F::Elem) -> Result<G::Elem>,
    ) -> Result<TriPoly<G>> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = f(c)?;
            if !target.is_zero(&v) {
                terms.insert(*m, v);
            }
        }
        Ok(TriPoly { field: target, terms })
    }

    /// Canonical text: grevlex-descending `c*z1^a*z2^b*z3^c` terms joined by
    /// ` + `; every variable is written with its exponent, `0` for zero.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| format!("{}*z1^{}*z2^{}*z3^{}", self.field.format_elem(c), m.0[0], m.0[1], m.0[2]))
            .collect();
        terms.join(" + ")
    }

    fn mul_dense(&self, rhs: &Self, dims: [usize; 3]) -> Self {
        let zero = self.field.zero();
        let mut acc = vec![zero; dims[0] * dims[1] * dims[2]];
        let idx = |m: Monomial| m.0[0] as usize + dims[0] * (m.0[1] as usize + dims[1] * m.0[2] as usize);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let slot = &mut acc[idx(*ma * *mb)];
                *slot = slot.clone() + ca.clone() * cb.clone();
            }
        }
        let mut terms = BTreeMap::new();
        for (i, c) in acc.into_iter().enumerate() {
            if self.field.is_zero(&c) {
                continue;
            }
            let e0 = i % dims[0];
            let e1 = (i / dims[0]) % dims[1];
            let e2 = i / (dims[0] * dims[1]);
            terms.insert(Monomial([e0 as u32, e1 as u32, e2 as u32]), c);
        }
        TriPoly { field: self.field.clone(), terms }
    }

    fn mul_sparse(&self, rhs: &Self) -> Self {
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let prod = ca.clone() * cb.clone();
                acc.entry(*ma * *mb)
                    .and_modify(|e| *e = e.clone() + prod.clone())
                    .or_insert(prod);
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !self.field.is_zero(c)).collect();
        TriPoly { field: self.field.clone(), terms }
    }
}

impl TriPoly<PrimeModulus> {
    /// Parses canonical text with integer coefficients (reduced mod `p`).
    pub fn parse(field: PrimeModulus, s: &str) -> Result<Self> {
        parse_tripoly(field, s, |c| c.trim().parse::<i64>().ok().map(|v| field.elem_i64(v)))
    }
}

/// Parses the canonical text form. Omitted variables are read as exponent
/// `0` and a bare coefficient is a constant term.
pub fn parse_tripoly<F: Field>(
    field: F,
    s: &str,
    parse_coeff: impl Fn(&str) -> Option<F::Elem>,
) -> Result<TriPoly<F>> {
    let err = || Error::Parse { what: "polynomial", input: s.to_string() };
    let s = s.trim();
    let mut out = TriPoly::zero(field);
    if s == "0" {
        return Ok(out);
    }
    for term in s.split(" + ") {
        let mut parts = term.split('*');
        let coeff = parse_coeff(parts.next().ok_or_else(err)?).ok_or_else(err)?;
        let mut e = [0u32; 3];
        for factor in parts {
            let (var, exp) = factor.split_once('^').unwrap_or((factor, "1"));
            let slot = match var {
                "z1" => 0,
                "z2" => 1,
                "z3" => 2,
                _ => return Err(err()),
            };
            e[slot] += exp.parse::<u32>().map_err(|_| err())?;
        }
        out.add_term(Monomial(e), coeff);
    }
    Ok(out)
}

impl<F: Field> fmt::Debug for TriPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl<'a, F: Field> Add<&'a TriPoly<F>> for &'a TriPoly<F> {
    type Output = TriPoly<F>;
    fn add(self, rhs: &'a TriPoly<F>) -> TriPoly<F> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a, F: Field> Sub<&'a TriPoly<F>> for &'a TriPoly<F> {
    type Output = TriPoly<F>;
    fn sub(self, rhs: &'a TriPoly<F>) -> TriPoly<F> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

const DENSE_LIMIT: usize = 1 << 22;

impl<'a, F: Field> Mul<&'a TriPoly<F>> for &'a TriPoly<F> {
    type Output = TriPoly<F>;
    fn mul(self, rhs: &'a TriPoly<F>) -> TriPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return TriPoly::zero(self.field.clone());
        }
        let mut dims = [0usize; 3];
        for (i, d) in dims.iter_mut().enumerate() {
            let v = i + 1;
            *d = (self.var_degree(v).unwrap() + rhs.var_degree(v).unwrap()) as usize + 1;
        }
        let cells = dims[0].saturating_mul(dims[1]).saturating_mul(dims[2]);
        // Dense accumulation pays off once the product fills its box.
        if cells <= DENSE_LIMIT && cells <= 8 * self.num_terms() * rhs.num_terms() {
            self.mul_dense(rhs, dims)
        } else {
            self.mul_sparse(rhs)
        }
    }
}

impl<F: Field> Neg for TriPoly<F> {
    type Output = TriPoly<F>;
    fn neg(self) -> TriPoly<F> {
        let terms = self.terms.into_iter().map(|(m, c)| (m, -c)).collect();
        TriPoly { field: self.field, terms }
    }
}

impl<F: Field> Neg for &TriPoly<F> {
    type Output = TriPoly<F>;
    fn neg(self) -> TriPoly<F> {
        -self.clone()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for TriPoly<F> {
            type Output = TriPoly<F>;
            fn $m(self, rhs: TriPoly<F>) -> TriPoly<F> {
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
    use crate::field::build_extension;
    use proptest::prelude::*;

    fn m(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn z(p: u64, var: usize) -> TriPoly<PrimeModulus> {
        TriPoly::var(m(p), var)
    }

    fn parse(p: u64, s: &str) -> TriPoly<PrimeModulus> {
        TriPoly::parse(m(p), s).unwrap()
    }

    #[test]
    fn grevlex_order() {
        // z1 > z2 > z3 in degree one, and z1*z3 < z2^2 in degree two.
        let mut v = vec![Monomial([0, 0, 1]), Monomial([1, 0, 0]), Monomial([0, 1, 0])];
        v.sort();
        assert_eq!(v, vec![Monomial([0, 0, 1]), Monomial([0, 1, 0]), Monomial([1, 0, 0])]);
        assert!(Monomial([1, 0, 1]) < Monomial([0, 2, 0]));
        assert!(Monomial([0, 2, 0]) < Monomial([1, 1, 0]));
        assert!(Monomial([5, 0, 0]) < Monomial([0, 0, 6]));
    }

    #[test]
    fn multiply_examples() {
        let a = &z(5, 1) + &z(5, 2);
        let b = &z(5, 1) - &z(5, 2);
        assert_eq!(&a * &b, parse(5, "1*z1^2 + 4*z2^2"));
        assert!((&a * &TriPoly::zero(m(5))).is_zero());
        assert_eq!(&a * &TriPoly::one(m(5)), a);
    }

    #[test]
    fn derivative_examples() {
        assert!(TriPoly::constant(m(7), m(7).elem(3)).partial_derivative(1).is_zero());
        assert!(z(7, 1).power(7).partial_derivative(1).is_zero());
        let f = &z(7, 1) * &z(7, 2).power(2);
        assert_eq!(f.partial_derivative(2), (&z(7, 1) * &z(7, 2)).scale_int(2));
    }

    #[test]
    fn evaluation_examples() {
        let f = m(3);
        let pt = [f.elem(1), f.elem(1), f.elem(1)];
        assert!(TriPoly::zero(f).evaluate(&f, &pt).is_zero());
        let xyz = &(&z(3, 1) * &z(3, 2)) * &z(3, 3);
        assert_eq!(xyz.evaluate(&f, &pt), f.elem(1));
        assert_eq!(xyz.evaluate(&f, &[f.elem(1), f.elem(2), f.elem(2)]), f.elem(1));
    }

    #[test]
    fn evaluation_in_extension() {
        let f9 = build_extension(m(3), 2).unwrap();
        let t = f9.generator();
        // z1^2 + 1 vanishes at t in F_3[t]/(t^2 + 1).
        let poly = &z(3, 1).power(2) + &TriPoly::one(m(3));
        assert!(poly.evaluate(&f9, &[t, f9.zero(), f9.zero()]).is_zero());
    }

    #[test]
    fn permutation_examples() {
        let f = &z(5, 1).power(2) * &z(5, 2);
        assert_eq!(f.permute_variables([1, 2, 3]), f);
        assert_eq!(z(5, 1).permute_variables([2, 1, 3]), z(5, 2));
        assert_eq!(f.permute_variables([2, 3, 1]), &z(5, 2).power(2) * &z(5, 3));
    }

    #[test]
    fn text_format() {
        let f = parse(5, "3*z1^2 + 4*z2*z3 + 1");
        assert_eq!(f.to_text(), "3*z1^2*z2^0*z3^0 + 4*z1^0*z2^1*z3^1 + 1*z1^0*z2^0*z3^0");
        assert_eq!(parse(5, &f.to_text()).to_text(), f.to_text());
        assert_eq!(TriPoly::zero(m(5)).to_text(), "0");
        assert!(parse_tripoly(m(5), "1*w^2", |_| Some(m(5).elem(1))).is_err());
    }

    fn arb_poly(p: u64) -> impl Strategy<Value = TriPoly<PrimeModulus>> {
        prop::collection::vec(((0u32..4, 0u32..4, 0u32..4), 0u64..p), 0..6).prop_map(move |ts| {
            TriPoly::from_terms(m(p), ts.into_iter().map(|((a, b, c), v)| (Monomial([a, b, c]), m(p).elem(v))))
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(f in arb_poly(11)) {
            prop_assert_eq!(parse(11, &f.to_text()), f);
        }

        #[test]
        fn dense_and_sparse_products_agree(a in arb_poly(7), b in arb_poly(7)) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let mut dims = [0usize; 3];
            for (i, d) in dims.iter_mut().enumerate() {
                *d = (a.var_degree(i + 1).unwrap() + b.var_degree(i + 1).unwrap()) as usize + 1;
            }
            prop_assert_eq!(a.mul_dense(&b, dims), a.mul_sparse(&b));
        }

        #[test]
        fn powers_add_exponents(a in arb_poly(5), e1 in 0u64..4, e2 in 0u64..4) {
            prop_assert_eq!(&a.power(e1) * &a.power(e2), a.power(e1 + e2));
        }

        #[test]
        fn leibniz_rule(a in arb_poly(7), b in arb_poly(7), var in 1usize..=3) {
            let lhs = (&a * &b).partial_derivative(var);
            let rhs = &(&a.partial_derivative(var) * &b) + &(&a * &b.partial_derivative(var));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
