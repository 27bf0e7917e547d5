use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Fixed-length vector of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVector(Vec<Rational>);

impl RatVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RatVector(entries)
    }

    pub fn zeros(len: usize) -> Self {
        RatVector(vec![Rational::zero(); len])
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        RatVector(entries.iter().map(|&x| Rational::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn dot(&self, other: &RatVector) -> Rational {
        assert_eq!(self.len(), other.len(), "dot product of unequal lengths");
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn sub(&self, other: &RatVector) -> RatVector {
        assert_eq!(self.len(), other.len());
        RatVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &RatVector) -> RatVector {
        assert_eq!(self.len(), other.len());
        RatVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: &Rational) -> RatVector {
        RatVector(self.0.iter().map(|a| a * k).collect())
    }
}

impl Index<usize> for RatVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for RatVector {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

impl From<Vec<Rational>> for RatVector {
    fn from(v: Vec<Rational>) -> Self {
        RatVector(v)
    }
}

impl fmt::Debug for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows. `cols` is only consulted when `rows` is
    /// empty.
    pub fn from_rows(rows: Vec<RatVector>, cols: usize) -> Result<Self> {
        let cols = rows.first().map_or(cols, RatVector::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            data.extend(row.into_entries());
        }
        Ok(RatMatrix { rows: n, cols, data })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let vs = rows.iter().map(|r| RatVector::from_i64s(r)).collect();
        Self::from_rows(vs, 0).expect("ragged literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                out[(i, j)] = (0..self.cols).map(|k| &self[(i, k)] * &other[(k, j)]).sum();
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &RatVector) -> Result<RatVector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v.iter()).map(|(a, b)| a * b).sum())
            .collect::<Vec<_>>()
            .into())
    }

    /// Reduces to reduced row echelon form in place and returns the pivot
    /// columns. Pivots are the first nonzero entry in column order.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip().expect("nonzero pivot");
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for j in c..self.cols {
                    let v = &self[(r, j)] * &factor;
                    self[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].checked_div(&pivot)?;
                for j in c..n {
                    let v = &m[(c, j)] * &factor;
                    m[(i, j)] -= v;
                }
            }
        }
        Ok(det)
    }

    /// Returns some exact solution of `self * x = rhs`, or `None` when the
    /// system is inconsistent. Free variables are set to zero.
    pub fn solve_linear(&self, rhs: &RatVector) -> Result<Option<RatVector>> {
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: rhs.len() });
        }
        let mut aug = RatMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = rhs[i].clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = RatVector::zeros(self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)].clone();
        }
        Ok(Some(x))
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Fraction-free (Bareiss) determinant of a square integer matrix given as
/// rows. Every intermediate division is exact.
pub fn int_determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::frac(p, d)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RatMatrix::identity(3).rank(), 3);
        assert_eq!(RatMatrix::zeros(2, 5).rank(), 0);
        assert_eq!(RatMatrix::from_i64_rows(&[&[1, 1], &[2, 2]]).rank(), 1);
        assert_eq!(RatMatrix::zeros(0, 4).rank(), 0);
    }

    #[test]
    fn determinant_examples() {
        for n in 0..5 {
            assert_eq!(RatMatrix::identity(n).determinant().unwrap(), Rational::one());
        }
        let perm = RatMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(perm.determinant().unwrap(), Rational::from(-1));
        let diag = RatMatrix::from_rows(
            vec![vec![q(1, 2), q(0, 1)].into(), vec![q(0, 1), q(1, 3)].into()],
            2,
        )
        .unwrap();
        assert_eq!(diag.determinant().unwrap(), q(1, 6));
    }

    #[test]
    fn determinant_rejects_non_square() {
        let m = RatMatrix::zeros(2, 3);
        assert_eq!(m.determinant(), Err(Error::NotSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn solve_examples() {
        let id = RatMatrix::identity(2);
        let rhs: RatVector = vec![q(1, 2), q(3, 4)].into();
        assert_eq!(id.solve_linear(&rhs).unwrap(), Some(rhs.clone()));

        let contradiction = RatMatrix::from_i64_rows(&[&[1], &[1]]);
        let rhs = RatVector::from_i64s(&[0, 1]);
        assert_eq!(contradiction.solve_linear(&rhs).unwrap(), None);

        // 2x+2y=1, 2x+4y=3: subtracting gives 2y=2, so y=1 and x=-1/2.
        let m = RatMatrix::from_i64_rows(&[&[2, 2], &[2, 4]]);
        let x = m.solve_linear(&RatVector::from_i64s(&[1, 3])).unwrap().unwrap();
        assert_eq!(x, vec![q(-1, 2), q(1, 1)].into());
    }

    #[test]
    fn solve_rejects_wrong_rhs_length() {
        let m = RatMatrix::identity(2);
        assert!(m.solve_linear(&RatVector::zeros(3)).is_err());
    }

    #[test]
    fn solve_underdetermined_returns_a_solution() {
        let m = RatMatrix::from_i64_rows(&[&[1, 1, 0]]);
        let rhs = RatVector::from_i64s(&[5]);
        let x = m.solve_linear(&rhs).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), rhs);
    }

    #[test]
    fn bareiss_matches_rational_elimination() {
        let rows = vec![
            vec![BigInt::from(2), BigInt::from(-1), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(0), BigInt::from(3)],
            vec![BigInt::from(1), BigInt::from(4), BigInt::from(1)],
        ];
        let rat = RatMatrix::from_i64_rows(&[&[2, -1, 0], &[0, 0, 3], &[1, 4, 1]]);
        assert_eq!(Rational::from(int_determinant(&rows)), rat.determinant().unwrap());
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-9i64..10, 1i64..6).prop_map(|(p, d)| Rational::frac(p, d))
    }

    fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
        proptest::collection::vec(small(), rows * cols).prop_map(move |v| {
            let rows_v = v.chunks(cols).map(|c| RatVector::new(c.to_vec())).collect();
            RatMatrix::from_rows(rows_v, cols).unwrap()
        })
    }

    proptest! {
        #[test]
        fn determinant_is_multiplicative(a in matrix(3, 3), b in matrix(3, 3)) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(
                ab.determinant().unwrap(),
                a.determinant().unwrap() * b.determinant().unwrap()
            );
        }

        #[test]
        fn solutions_satisfy_system(m in matrix(3, 4), rhs in proptest::collection::vec(small(), 3)) {
            let rhs = RatVector::new(rhs);
            if let Some(x) = m.solve_linear(&rhs).unwrap() {
                prop_assert_eq!(m.mul_vec(&x).unwrap(), rhs);
            }
        }

        #[test]
        fn square_nonsingular_systems_are_solved(m in matrix(3, 3), rhs in proptest::collection::vec(small(), 3)) {
            let rhs = RatVector::new(rhs);
            let sol = m.solve_linear(&rhs).unwrap();
            if !m.determinant().unwrap().is_zero() {
                prop_assert!(sol.is_some());
            }
        }

        #[test]
        fn rank_invariant_under_row_ops(
            m in matrix(4, 3),
            a in 0usize..4,
            b in 0usize..4,
            k in small().prop_filter("nonzero", |k| !k.is_zero()),
        ) {
            let r = m.rank();
            let mut swapped = m.clone();
            swapped.swap_rows(a, b);
            prop_assert_eq!(swapped.rank(), r);
            let mut scaled = m.clone();
            for j in 0..scaled.cols() {
                let v = &scaled[(a, j)] * &k;
                scaled[(a, j)] = v;
            }
            prop_assert_eq!(scaled.rank(), r);
        }
    }
}
