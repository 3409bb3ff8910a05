//! Exact rational vectors and matrices.
//!
//! Entries are arbitrary-precision rationals and every reduction uses the
//! same deterministic pivoting rule (first nonzero entry scanning rows
//! top-down, columns left to right), so kernels, ranks and solutions are
//! bit-identical across runs and platforms. No floating point anywhere.

// index loops mirror the row/column arithmetic of the elimination steps
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

/// Exact rational scalar. Always stored reduced with a positive
/// denominator; zero is `0/1`.
pub type Rational = num_rational::BigRational;

/// Builds `numer/denom` as an exact rational.
///
/// Panics if `denom == 0`.
pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Builds an integer rational.
pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows} x {cols})")]
    NotSquare { rows: usize, cols: usize },
}

/// Dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(LinalgError::DimensionMismatch(
                "rows of unequal length".into(),
            ));
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from column vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(LinalgError::DimensionMismatch(
                "column of wrong length".into(),
            ));
        }
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn scaled(&self, s: &Rational) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) * s)
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                acc += self.at(r, k) * rhs.at(k, c);
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector length {} does not match {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for c in 0..self.cols {
                    acc += self.at(r, c) * &v[c];
                }
                acc
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.at(r, c).is_one()
                    } else {
                        self.at(r, c).is_zero()
                    }
                })
            })
    }

    /// Row-reduces a copy to reduced row echelon form.
    /// Returns the reduced rows and the pivot columns in order.
    fn rref(&self) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let mut a: Vec<Vec<Rational>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c).clone()).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            if next_row >= self.rows {
                break;
            }
            let Some(pivot_row) = (next_row..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(next_row, pivot_row);
            let inv = a[next_row][col].clone();
            for c in col..self.cols {
                let v = a[next_row][c].clone();
                a[next_row][c] = v / &inv;
            }
            for r in 0..self.rows {
                if r != next_row && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for c in col..self.cols {
                        let sub = &factor * &a[next_row][c];
                        let v = a[r][c].clone();
                        a[r][c] = v - sub;
                    }
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        (a, pivots)
    }

    /// Rank over the rationals, exact.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one column per free variable, in reduced
    /// column echelon form: the basis vector for free column `f` has entry 1
    /// at `f` and 0 at every other free column. Deterministic.
    pub fn kernel_basis(&self) -> Matrix {
        let (a, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Matrix::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            basis.set(f, j, Rational::one());
            for (row, &p) in pivots.iter().enumerate() {
                basis.set(p, j, -a[row][f].clone());
            }
        }
        basis
    }

    /// Solves `self * x = b` exactly. Returns `None` when the system is
    /// inconsistent; free variables are set to zero.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "right-hand side length {} does not match {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut augmented = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                augmented.set(r, c, self.at(r, c).clone());
            }
            augmented.set(r, self.cols, b[r].clone());
        }
        let (a, pivots) = augmented.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = a[row][self.cols].clone();
        }
        Ok(Some(x))
    }

    /// Exact determinant of a square matrix.
    pub fn determinant(&self) -> Result<Rational, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|r| (0..n).map(|c| self.at(r, c).clone()).collect())
            .collect();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot_row) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(Rational::zero());
            };
            if pivot_row != col {
                a.swap(col, pivot_row);
                det = -det;
            }
            det *= &a[col][col];
            for r in col + 1..n {
                if !a[r][col].is_zero() {
                    let factor = &a[r][col] / &a[col][col];
                    for c in col..n {
                        let sub = &factor * &a[col][c];
                        let v = a[r][c].clone();
                        a[r][c] = v - sub;
                    }
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Result<Option<Matrix>, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut augmented = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                augmented.set(r, c, self.at(r, c).clone());
            }
            augmented.set(r, n + r, Rational::one());
        }
        let (a, pivots) = augmented.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Ok(None);
        }
        Ok(Some(Matrix::from_fn(n, n, |r, c| a[r][n + c].clone())))
    }

    /// Entries rendered as exact strings, row by row.
    pub fn entry_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c).to_string()).collect())
            .collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strings = self.entry_strings();
        let mut widths = vec![0usize; self.cols];
        for row in &strings {
            for (c, s) in row.iter().enumerate() {
                widths[c] = widths[c].max(s.len());
            }
        }
        for (i, row) in strings.iter().enumerate() {
            write!(f, "[")?;
            for (c, s) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", s, width = widths[c])?;
            }
            write!(f, "]")?;
            if i + 1 < strings.len() {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// True when `m` equals `scale * identity`.
pub fn is_scaled_identity(m: &Matrix, scale: &Rational) -> bool {
    m.rows() == m.cols()
        && (0..m.rows()).all(|r| {
            (0..m.cols()).all(|c| {
                if r == c {
                    m.at(r, c) == scale
                } else {
                    m.at(r, c).is_zero()
                }
            })
        })
}
