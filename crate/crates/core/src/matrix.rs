//! Dense matrices over an exact scalar type.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::scalar::{ExactDiv, Field, Scalar};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from nested rows. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        self.iter_rows().map(<[T]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self
    where
        T: Clone,
    {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Upper triangular with ones on the diagonal.
    pub fn is_upper_unitriangular(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i).is_one() && (0..i).all(|j| self.get(i, j).is_zero())
            })
    }

    pub fn try_mul(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                acc + self.get(i, k).clone() * rhs.get(k, j).clone()
            })
        }))
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// The bilinear form `uᵗ · self · v`.
    pub fn pair(&self, u: &[T], v: &[T]) -> T {
        let mv = self.mul_vec(v);
        u.iter()
            .zip(mv)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b)
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix<T>> {
        self.require_square()?;
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Smallest `k` in `1..=bound` with `self^k = 1`, by repeated multiplication.
    ///
    /// Invertibility is the caller's concern; a singular matrix simply never
    /// reaches the identity.
    pub fn multiplicative_order(&self, bound: u64) -> Result<Option<u64>> {
        self.require_square()?;
        let mut power = self.clone();
        for k in 1..=bound {
            if power.is_identity() {
                return Ok(Some(k));
            }
            power = &power * self;
        }
        Ok(None)
    }
}

impl<T: ExactDiv> Matrix<T> {
    /// Determinant by Bareiss fraction-free elimination.
    ///
    /// Every intermediate division is exact, so over `Z` no fractions ever
    /// appear and entry growth stays bounded by Hadamard's inequality.
    pub fn determinant_bareiss(&self) -> Result<T> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut m = self.clone();
        let mut sign_flip = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !m.get(r, k).is_zero()) {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign_flip = !sign_flip;
                    }
                    None => return Ok(T::zero()),
                }
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = pivot.clone() * m.get(i, j).clone()
                        - m.get(i, k).clone() * m.get(k, j).clone();
                    *m.get_mut(i, j) = v.div_exact(&prev);
                }
                *m.get_mut(i, k) = T::zero();
            }
            prev = pivot;
        }
        let det = m.get(n - 1, n - 1).clone();
        Ok(if sign_flip { -det } else { det })
    }
}

impl<T: Field> Matrix<T> {
    /// Determinant by pivoted Gaussian elimination over a field.
    pub fn determinant(&self) -> Result<T> {
        self.require_square()?;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for k in 0..n {
            let Some(r) = (k..n).find(|&r| !m.get(r, k).is_zero()) else {
                return Ok(T::zero());
            };
            if r != k {
                m.swap_rows(k, r);
                det = -det;
            }
            let pivot = m.get(k, k).clone();
            let inv = pivot.inverse().expect("nonzero pivot");
            det = det * pivot;
            for i in k + 1..n {
                let factor = m.get(i, k).clone() * inv.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = m.get(i, j).clone() - factor.clone() * m.get(k, j).clone();
                    *m.get_mut(i, j) = v;
                }
            }
        }
        Ok(det)
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix<T>> {
        self.require_square()?;
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Matrix::<T>::identity(n);
        for k in 0..n {
            let r = (k..n)
                .find(|&r| !m.get(r, k).is_zero())
                .ok_or(Error::Singular)?;
            m.swap_rows(k, r);
            inv.swap_rows(k, r);
            let p = m.get(k, k).inverse().ok_or(Error::Singular)?;
            for j in 0..n {
                *m.get_mut(k, j) = m.get(k, j).clone() * p.clone();
                *inv.get_mut(k, j) = inv.get(k, j).clone() * p.clone();
            }
            for i in 0..n {
                if i == k || m.get(i, k).is_zero() {
                    continue;
                }
                let f = m.get(i, k).clone();
                for j in 0..n {
                    let a = m.get(i, j).clone() - f.clone() * m.get(k, j).clone();
                    *m.get_mut(i, j) = a;
                    let b = inv.get(i, j).clone() - f.clone() * inv.get(k, j).clone();
                    *inv.get_mut(i, j) = b;
                }
            }
        }
        Ok(inv)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(r) = (rank..self.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, r);
            let inv = m.get(rank, col).inverse().expect("nonzero pivot");
            for i in rank + 1..self.rows {
                let f = m.get(i, col).clone() * inv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(rank, j).clone();
                    *m.get_mut(i, j) = v;
                }
            }
            rank += 1;
        }
        rank
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.try_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl<T: fmt::Display> Matrix<T> {
    /// Rows separated by `;`, entries by `,`.
    pub fn to_compact_string(&self) -> String {
        self.iter_rows()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Space-aligned grid, one row per line.
    pub fn to_grid_string(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .iter_rows()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        cells
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| format!("{c:>width$}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}
