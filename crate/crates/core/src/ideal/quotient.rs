use std::collections::HashMap;

use super::{GroebnerBasis, Reducers, Terms};
use crate::error::{Error, Result};
use crate::field::{Fp, PrimeModulus};
use crate::poly::{Monomial, UniPoly};
use crate::{FpMatrix, FpUniPoly};

/// Column of a multiplication map: either another standard monomial, or the
/// sparse normal form of a border monomial.
#[derive(Clone, Debug, PartialEq)]
enum Column {
    Standard(usize),
    Border(Vec<(usize, Fp)>),
}

/// `F_p[z1, z2, z3]/I` for a zero-dimensional `I`, in the basis of standard
/// monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientAlgebra {
    field: PrimeModulus,
    staircase: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    columns: [Vec<Column>; 3],
}

impl QuotientAlgebra {
    pub fn field(&self) -> PrimeModulus {
        self.field
    }

    /// Standard monomials in increasing monomial order.
    pub fn staircase(&self) -> &[Monomial] {
        &self.staircase
    }

    pub fn dim(&self) -> usize {
        self.staircase.len()
    }

    pub fn index_of(&self, m: Monomial) -> Option<usize> {
        self.index.get(&m).copied()
    }

    /// `z_var * v` in staircase coordinates.
    pub fn apply(&self, var: usize, v: &[Fp]) -> Vec<Fp> {
        let p = self.field;
        let mut out = vec![p.elem(0); self.dim()];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            match &self.columns[var - 1][c] {
                Column::Standard(r) => out[*r] += *x,
                Column::Border(entries) => {
                    for &(r, e) in entries {
                        out[r] += *x * e;
                    }
                }
            }
        }
        out
    }

    /// Dense matrix of multiplication by `z_var`; column `c` holds the normal
    /// form of `z_var` times the `c`-th standard monomial.
    pub fn mult_matrix(&self, var: usize) -> FpMatrix {
        let p = self.field;
        let d = self.dim();
        let mut m = FpMatrix::zeros(p, d, d);
        for (c, col) in self.columns[var - 1].iter().enumerate() {
            match col {
                Column::Standard(r) => m.set(*r, c, p.elem(1)),
                Column::Border(entries) => {
                    for &(r, e) in entries {
                        m.set(r, c, e);
                    }
                }
            }
        }
        m
    }
}

/// Builds the quotient algebra; fails unless every variable has a pure power
/// among the leading monomials.
pub fn quotient_algebra(basis: &GroebnerBasis) -> Result<QuotientAlgebra> {
    let p = basis.field;
    let order = basis.order;
    let leads = basis.leading_monomials();
    let empty = || QuotientAlgebra {
        field: p,
        staircase: Vec::new(),
        index: HashMap::new(),
        columns: [Vec::new(), Vec::new(), Vec::new()],
    };
    if basis.is_unit() {
        return Ok(empty());
    }
    let mut bounds = [0u32; 3];
    for v in 0..3 {
        bounds[v] = leads
            .iter()
            .filter(|m| m.degree() > 0 && m.pure_power_var() == Some(v + 1))
            .map(|m| m.0[v])
            .min()
            .ok_or(Error::NotZeroDimensional(v + 1))?;
    }
    let mut staircase = Vec::new();
    for a in 0..bounds[0] {
        for b in 0..bounds[1] {
            for c in 0..bounds[2] {
                let m = Monomial([a, b, c]);
                if !leads.iter().any(|l| l.divides(m)) {
                    staircase.push(m);
                }
            }
        }
    }
    staircase.sort_by_key(|m| order.key(*m));
    let index: HashMap<Monomial, usize> = staircase.iter().enumerate().map(|(i, m)| (*m, i)).collect();

    let mut reducers = Reducers::new(order);
    for t in &basis.terms {
        reducers.push(t);
    }
    let columns = [1, 2, 3].map(|var| {
        staircase
            .iter()
            .map(|s| {
                let m = *s * Monomial::var(var);
                match index.get(&m) {
                    Some(&r) => Column::Standard(r),
                    None => {
                        let nf = reducers.reduce(&Terms(vec![(order.key(m), p.elem(1))]), p);
                        let mut entries: Vec<(usize, Fp)> =
                            nf.0.iter().map(|&(k, c)| (index[&order.decode(k)], c)).collect();
                        entries.sort_by_key(|e| e.0);
                        Column::Border(entries)
                    }
                }
            })
            .collect()
    });
    Ok(QuotientAlgebra { field: p, staircase, index, columns })
}

/// Monic generator of `I ∩ F_p[z_var]`: the minimal polynomial of `z_var`
/// acting on the class of `1`, found as the first linear dependence among
/// `1, z, z^2, ...` in the quotient. For the zero algebra this is `1`.
pub fn elimination_min_poly(q: &QuotientAlgebra, var: usize) -> FpUniPoly {
    let p = q.field;
    let d = q.dim();
    if d == 0 {
        return UniPoly::one(p);
    }
    let one = q.index_of(Monomial::ONE).expect("1 is standard in a proper ideal");
    let mut power = vec![p.elem(0); d];
    power[one] = p.elem(1);
    // Echelon rows: (pivot, vector normalized at pivot, combination of powers).
    let mut rows: Vec<(usize, Vec<Fp>, Vec<Fp>)> = Vec::new();
    for k in 0..=d {
        let mut v = power.clone();
        let mut comb = vec![p.elem(0); k + 1];
        comb[k] = p.elem(1);
        for (piv, rv, rc) in &rows {
            let f = v[*piv];
            if f.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(rv) {
                *x -= f * *y;
            }
            for (x, y) in comb.iter_mut().zip(rc) {
                *x -= f * *y;
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => return UniPoly::new(p, comb),
            Some(piv) => {
                let inv = v[piv].inverse().unwrap();
                v.iter_mut().for_each(|x| *x *= inv);
                comb.iter_mut().for_each(|x| *x *= inv);
                rows.push((piv, v, comb));
            }
        }
        power = q.apply(var, &power);
    }
    unreachable!("more than dim vectors are always dependent")
}

/// Seidenberg's criterion: radical iff every elimination polynomial is
/// squarefree.
pub fn is_radical_zero_dim(q: &QuotientAlgebra) -> bool {
    (1..=3).all(|v| elimination_min_poly(q, v).is_squarefree())
}

#[cfg(test)]
mod tests {
    use super::super::{buchberger, MonomialOrder};
    use super::*;
    use crate::poly::TriPoly;
    use crate::FpTriPoly;

    fn prime(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn algebra(p: u64, gens: &[&str]) -> Result<QuotientAlgebra> {
        let gens: Vec<FpTriPoly> = gens.iter().map(|s| TriPoly::parse(prime(p), s).unwrap()).collect();
        quotient_algebra(&buchberger(prime(p), &gens, MonomialOrder::Grevlex))
    }

    fn uni(p: u64, c: &[i64]) -> FpUniPoly {
        UniPoly::new(prime(p), c.iter().map(|&v| prime(p).elem_i64(v)).collect())
    }

    /// `m(M)` by Horner's rule on matrices.
    fn eval_at_matrix(m: &FpUniPoly, a: &FpMatrix) -> FpMatrix {
        let p = *m.field();
        let n = a.rows();
        m.coeffs()
            .iter()
            .rev()
            .fold(FpMatrix::zeros(p, n, n), |acc, c| acc.mul(a).add(&FpMatrix::identity(p, n).scale(c)))
    }

    #[test]
    fn variables_ideal() {
        let q = algebra(5, &["1*z1", "1*z2", "1*z3"]).unwrap();
        assert_eq!(q.staircase(), &[Monomial::ONE]);
        for v in 1..=3 {
            assert!(q.mult_matrix(v).is_zero());
        }
        assert_eq!(elimination_min_poly(&q, 1), uni(5, &[0, 1]));
        assert!(is_radical_zero_dim(&q));
    }

    #[test]
    fn idempotent_ideal() {
        let q = algebra(5, &["1*z1^2 + -1*z1", "1*z2", "1*z3"]).unwrap();
        assert_eq!(q.staircase(), &[Monomial::ONE, Monomial([1, 0, 0])]);
        assert_eq!(elimination_min_poly(&q, 1), uni(5, &[0, -1, 1]));
        assert_eq!(elimination_min_poly(&q, 2), uni(5, &[0, 1]));
        assert!(is_radical_zero_dim(&q));
    }

    #[test]
    fn nonreduced_ideal() {
        let q = algebra(5, &["1*z1^2", "1*z2", "1*z3"]).unwrap();
        assert_eq!(elimination_min_poly(&q, 1), uni(5, &[0, 0, 1]));
        assert!(!is_radical_zero_dim(&q));
    }

    #[test]
    fn positive_dimension_detected() {
        assert!(matches!(algebra(5, &["1*z1"]), Err(Error::NotZeroDimensional(2))));
    }

    #[test]
    fn unit_ideal_is_zero_algebra() {
        let q = algebra(3, &["1*z1 + 1", "1*z1"]).unwrap();
        assert_eq!(q.dim(), 0);
        assert_eq!(elimination_min_poly(&q, 2), uni(3, &[1]));
        assert!(is_radical_zero_dim(&q));
    }

    #[test]
    fn matrices_commute_and_min_polys_annihilate() {
        let q = algebra(7, &["1*z1^2 + -1*z2 + 3", "1*z2^2 + -1*z3", "1*z3^3 + -1*z1 + 2*z1*z2"]).unwrap();
        assert!(q.dim() > 0);
        let ms = [1, 2, 3].map(|v| q.mult_matrix(v));
        for a in &ms {
            for b in &ms {
                assert_eq!(a.mul(b), b.mul(a));
            }
        }
        for v in 1..=3 {
            let m = elimination_min_poly(&q, v);
            assert!(m.degree().unwrap() <= q.dim());
            assert!(eval_at_matrix(&m, &ms[v - 1]).is_zero());
        }
    }

    #[test]
    fn apply_matches_dense_matrix() {
        let q = algebra(11, &["1*z1^3 + -2*z2", "1*z2^2 + -1*z1*z3", "1*z3^2 + -5"]).unwrap();
        let d = q.dim();
        let v: Vec<Fp> = (0..d).map(|i| prime(11).elem((i * 7 + 3) as u64)).collect();
        for var in 1..=3 {
            assert_eq!(q.apply(var, &v), q.mult_matrix(var).mul_vec(&v));
        }
    }
}
