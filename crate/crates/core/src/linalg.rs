//! Exact dense linear algebra: rank, nullspace and consistent solves.
//!
//! Every routine reduces to one Gauss-Jordan elimination in which the pivot
//! of a column is the first row (in current row order) holding a nonzero
//! entry. With exact scalars the reduced row echelon form is unique, so rank,
//! nullspace basis and the chosen particular solution do not depend on the
//! order in which rows were supplied.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows of equal length. `cols` is needed so that an
    /// empty row list still has a width.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Result<Self> {
        let n_rows = rows.len();
        let mut entries = Vec::with_capacity(n_rows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidInput(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(Matrix {
            rows: n_rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::InvalidInput(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// Appends `b` as an extra column.
    pub fn augment(&self, b: &[T]) -> Result<Self> {
        if b.len() != self.rows {
            return Err(Error::InvalidInput(format!(
                "right-hand side of length {} against {} rows",
                b.len(),
                self.rows
            )));
        }
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        Self::from_rows(self.cols + 1, rows)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form together with the pivot column of each
    /// nonzero row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = T::one() / m[(r, c)].clone();
            for j in c..m.cols {
                let v = m[(r, j)].clone() * inv.clone();
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    let v = m[(i, j)].clone() - factor.clone() * m[(r, j)].clone();
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.entries[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.entries[i * self.cols + j]
    }
}

/// Exact rank.
pub fn rank<T: Scalar>(m: &Matrix<T>) -> usize {
    m.rref().1.len()
}

/// Basis of `{v : m v = 0}`, one vector per free column in increasing
/// column order; each vector has a 1 in its free column and zeros in the
/// other free columns.
pub fn nullspace<T: Scalar>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let (r, pivots) = m.rref();
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![T::zero(); m.cols()];
            v[f] = T::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, f)].clone();
            }
            v
        })
        .collect()
}

/// One exact solution of `m v = b` if the system is consistent. Free
/// variables are set to zero.
pub fn solve_consistent<T: Scalar>(m: &Matrix<T>, b: &[T]) -> Result<Option<Vec<T>>> {
    let aug = m.augment(b)?;
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&m.cols()) {
        return Ok(None);
    }
    let mut v = vec![T::zero(); m.cols()];
    for (row, &p) in pivots.iter().enumerate() {
        v[p] = r[(row, m.cols())].clone();
    }
    Ok(Some(v))
}

/// Determinant by elimination; `m` must be square.
pub fn determinant<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    if m.rows() != m.cols() {
        return Err(Error::InvalidInput("determinant of a non-square matrix".into()));
    }
    let mut a = m.clone();
    let n = a.rows();
    let mut det = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return Ok(T::zero());
        };
        if p != c {
            a.swap_rows(p, c);
            det = -det;
        }
        let pivot = a[(c, c)].clone();
        det = det * pivot.clone();
        for i in c + 1..n {
            if a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone() / pivot.clone();
            for j in c..n {
                let v = a[(i, j)].clone() - factor.clone() * a[(c, j)].clone();
                a[(i, j)] = v;
            }
        }
    }
    Ok(det)
}
