//! Dense matrices over a [`Field`] with exact rank computation.

use std::fmt;

use crate::field::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field.clone(), n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds from row vectors of equal length.
    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        Matrix { field, rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    #[inline]
    pub fn field(&self) -> &F {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// The submatrix formed by the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let rows = (0..self.rows).map(|r| cols.iter().map(|&c| self.get(r, c).clone()).collect()).collect();
        let mut m = Self::from_rows(self.field.clone(), rows);
        m.cols = cols.len();
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !self.field.is_zero(a))
                    .fold(self.field.zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.field.clone(), self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if self.field.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * rhs.get(k, j).clone();
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| a.clone() * c.clone()).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// Rank by fraction-free elimination: rows are combined as
    /// `pivot * row - entry * pivot_row`, so no inverses are taken. The pivot
    /// in each column is the first nonzero entry at or below the current row.
    pub fn rank(&self) -> usize {
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(piv) = (rank..rows).find(|&r| !self.field.is_zero(&a[r * cols + c])) else {
                continue;
            };
            if piv != rank {
                for j in 0..cols {
                    a.swap(piv * cols + j, rank * cols + j);
                }
            }
            let pv = a[rank * cols + c].clone();
            for r in rank + 1..rows {
                let e = a[r * cols + c].clone();
                if self.field.is_zero(&e) {
                    continue;
                }
                for j in c..cols {
                    a[r * cols + j] = pv.clone() * a[r * cols + j].clone() - e.clone() * a[rank * cols + j].clone();
                }
            }
            rank += 1;
        }
        rank
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| self.field.format_elem(x)).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeModulus, Rationals};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn mat(p: u64, rows: &[&[i64]]) -> Matrix<PrimeModulus> {
        let f = PrimeModulus::new(p).unwrap();
        Matrix::from_rows(f, rows.iter().map(|r| r.iter().map(|&v| f.elem_i64(v)).collect()).collect())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(mat(5, &[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(mat(7, &[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(mat(5, &[&[1, 2, 3], &[0, 1, 4], &[1, 3, 2]]).rank(), 2);
        assert_eq!(mat(5, &[&[0, 0], &[0, 0]]).rank(), 0);
        assert_eq!(mat(3, &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 1]]).rank(), 3);
        // Full rank over Q, singular mod 3.
        assert_eq!(mat(3, &[&[1, 1], &[1, 4]]).rank(), 1);
    }

    /// Rank over F_p equals the number of nonzero rows after eliminating
    /// with explicit inverses; checked against a 2x2-minor brute force.
    fn rank_by_minors(m: &Matrix<PrimeModulus>) -> usize {
        let f = *m.field();
        if m.is_zero() {
            return 0;
        }
        for r1 in 0..m.rows() {
            for r2 in r1 + 1..m.rows() {
                for c1 in 0..m.cols() {
                    for c2 in c1 + 1..m.cols() {
                        let d = *m.get(r1, c1) * *m.get(r2, c2) - *m.get(r1, c2) * *m.get(r2, c1);
                        if !f.is_zero(&d) {
                            return 2;
                        }
                    }
                }
            }
        }
        1
    }

    proptest! {
        #[test]
        fn rank_matches_minors_on_two_row_matrices(v in prop::collection::vec(0i64..5, 8)) {
            let m = mat(5, &[&v[..4], &v[4..]]);
            prop_assert_eq!(m.rank(), rank_by_minors(&m));
        }

        #[test]
        fn rank_invariant_under_transpose(v in prop::collection::vec(0i64..3, 12)) {
            let m = mat(3, &[&v[..4], &v[4..8], &v[8..]]);
            let t = mat(3, &(0..4).map(|c| (0..3).map(|r| v[r * 4 + c]).collect::<Vec<_>>())
                .collect::<Vec<_>>().iter().map(|r| r.as_slice()).collect::<Vec<_>>());
            prop_assert_eq!(m.rank(), t.rank());
        }
    }

    #[test]
    fn works_over_rationals() {
        let q = |n: i64| BigRational::from_integer(n.into());
        let m = Matrix::from_rows(Rationals, vec![vec![q(1), q(2)], vec![q(3), q(6)], vec![q(1), q(0)]]);
        assert_eq!(m.rank(), 2);
        let id = Matrix::identity(Rationals, 2);
        assert_eq!(m.mul(&id), m);
    }
}
