//! Minimal dense matrices over an arbitrary scalar, with exact Gaussian
//! elimination when the scalar is a field. Only what the small eigenproblems
//! here need; the float eigensolve itself is delegated to nalgebra.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Coeff, Field};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct DMat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Coeff> DMat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> DMat<U> {
        DMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(&f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    acc = acc + self[(i, j)].clone() * v[j].clone();
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vecmat(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.rows, v.len());
        (0..self.cols)
            .map(|j| {
                let mut acc = T::zero();
                for i in 0..self.rows {
                    acc = acc + v[i].clone() * self[(i, j)].clone();
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Outer product of a column and a row vector.
    pub fn outer(col: &[T], row: &[T]) -> Self {
        let mut out = Self::zeros(col.len(), row.len());
        for i in 0..col.len() {
            for j in 0..row.len() {
                out[(i, j)] = col[i].clone() * row[j].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc + self[(i, i)].clone();
        }
        acc
    }
}

impl<T> std::ops::Index<(usize, usize)> for DMat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for DMat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Field> DMat<T> {
    /// Solve `self * x = b` by Gaussian elimination with partial pivoting.
    /// `None` when the matrix is singular (exact zero pivot for exact
    /// scalars; vanishing magnitude for floats).
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(self.rows, b.len());
        let n = self.rows;
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a[(r, col)].is_zero())
                .max_by(|&x, &y| {
                    a[(x, col)].abs_f64().partial_cmp(&a[(y, col)].abs_f64()).unwrap()
                })?;
            if pivot != col {
                for j in 0..n {
                    let tmp = a[(pivot, j)].clone();
                    a[(pivot, j)] = a[(col, j)].clone();
                    a[(col, j)] = tmp;
                }
                rhs.swap(pivot, col);
            }
            let p = a[(col, col)].clone();
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone() / p.clone();
                for j in col..n {
                    a[(r, j)] = a[(r, j)].clone() - factor.clone() * a[(col, j)].clone();
                }
                rhs[r] = rhs[r].clone() - factor * rhs[col].clone();
            }
        }
        let mut x = vec![T::zero(); n];
        for i in (0..n).rev() {
            let mut acc = rhs[i].clone();
            for j in i + 1..n {
                acc = acc - a[(i, j)].clone() * x[j].clone();
            }
            if a[(i, i)].is_zero() {
                return None;
            }
            x[i] = acc / a[(i, i)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for j in 0..n {
            let mut e = vec![T::zero(); n];
            e[j] = T::one();
            let col = self.solve(&e).ok_or(Error::SingularOverlap)?;
            for i in 0..n {
                out[(i, j)] = col[i].clone();
            }
        }
        Ok(out)
    }

    /// Null vector of a square matrix of nominal rank `n - 1`, by complete
    /// pivoting: eliminate `n - 1` pivots (largest magnitude), set the one
    /// remaining free unknown to 1 and back-substitute. Used as the
    /// brute-force counterpart to the determinant formulas.
    pub fn null_vector(&self) -> Option<Vec<T>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 1 {
            return Some(vec![T::one()]);
        }
        let mut a = self.clone();
        let mut col_perm: Vec<usize> = (0..n).collect();
        for step in 0..n - 1 {
            // full search for the largest remaining pivot
            let mut best = (step, step);
            let mut best_mag = -1.0;
            for r in step..n {
                for c in step..n {
                    let mag = if a[(r, c)].is_zero() { -1.0 } else { a[(r, c)].abs_f64() };
                    if mag > best_mag {
                        best_mag = mag;
                        best = (r, c);
                    }
                }
            }
            if best_mag < 0.0 {
                // rank deficiency worse than 1: any unit vector in the free
                // columns annihilates; pick the first.
                break;
            }
            let (pr, pc) = best;
            if pr != step {
                for j in 0..n {
                    let tmp = a[(pr, j)].clone();
                    a[(pr, j)] = a[(step, j)].clone();
                    a[(step, j)] = tmp;
                }
            }
            if pc != step {
                for i in 0..n {
                    let tmp = a[(i, pc)].clone();
                    a[(i, pc)] = a[(i, step)].clone();
                    a[(i, step)] = tmp;
                }
                col_perm.swap(pc, step);
            }
            let p = a[(step, step)].clone();
            for r in step + 1..n {
                if a[(r, step)].is_zero() {
                    continue;
                }
                let factor = a[(r, step)].clone() / p.clone();
                for j in step..n {
                    a[(r, j)] = a[(r, j)].clone() - factor.clone() * a[(step, j)].clone();
                }
            }
        }
        // permuted unknown n-1 is free; set to one, back-substitute the rest
        let mut y = vec![T::zero(); n];
        y[n - 1] = T::one();
        for i in (0..n - 1).rev() {
            let mut acc = T::zero();
            for j in i + 1..n {
                acc = acc - a[(i, j)].clone() * y[j].clone();
            }
            if a[(i, i)].is_zero() {
                return None;
            }
            y[i] = acc / a[(i, i)].clone();
        }
        let mut x = vec![T::zero(); n];
        for (slot, &orig) in col_perm.iter().enumerate() {
            x[orig] = y[slot].clone();
        }
        Some(x)
    }
}
