use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::{Field, Real};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Field> DenseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn matvec(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(S::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    /// `x^H A x` for square `A`.
    pub fn quad_form(&self, x: &[S]) -> S {
        let ax = self.matvec(x);
        super::dot(x, &ax)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> S::Real {
        use num_traits::Float;
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .fold(<S::Real as num_traits::Zero>::zero(), |m, (&a, &b)| {
                m.max((a - b).modulus())
            })
    }

    pub fn scaled_add(&self, alpha: S, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + alpha * b)
                .collect(),
        }
    }
}

impl<S> Index<(usize, usize)> for DenseMatrix<S> {
    type Output = S;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for DenseMatrix<S> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
pub fn solve_dense<S: Field>(mut a: DenseMatrix<S>, b: &[S]) -> Result<Vec<S>> {
    let n = a.rows;
    assert_eq!(n, a.cols);
    assert_eq!(n, b.len());
    let mut x = b.to_vec();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| {
                a[(i, k)]
                    .modulus()
                    .partial_cmp(&a[(j, k)].modulus())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("non-empty pivot range");
        let pivot = a[(p, k)];
        if pivot.modulus() == num_traits::Zero::zero() {
            return Err(Error::Singular { row: k, pivot: 0.0 });
        }
        if p != k {
            for j in 0..n {
                a.data.swap(k * n + j, p * n + j);
            }
            x.swap(k, p);
        }
        for i in k + 1..n {
            let l = a[(i, k)] / pivot;
            if l == S::zero() {
                continue;
            }
            a[(i, k)] = S::zero();
            for j in k + 1..n {
                let akj = a[(k, j)];
                a[(i, j)] -= l * akj;
            }
            let xk = x[k];
            x[i] -= l * xk;
        }
    }
    for k in (0..n).rev() {
        let mut acc = x[k];
        for j in k + 1..n {
            acc -= a[(k, j)] * x[j];
        }
        x[k] = acc / a[(k, k)];
    }
    Ok(x)
}

/// Lower Cholesky factor of a symmetric positive-definite matrix.
pub fn cholesky<T: Real>(a: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    let n = a.rows;
    let mut l = DenseMatrix::<T>::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if d <= T::zero() {
            return Err(Error::Singular {
                row: j,
                pivot: d.f64(),
            });
        }
        let d = d.sqrt();
        l[(j, j)] = d;
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / d;
        }
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn gepp_needs_pivoting() {
        let a = DenseMatrix::from_fn(2, 2, |i, j| [[0.0, 1.0], [1.0, 1.0]][i][j]);
        let x: Vec<f64> = solve_dense(a, &[2.0, 3.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-15 && (x[1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn gepp_complex() {
        let i = Complex64::i();
        let a = DenseMatrix::from_fn(2, 2, |r, c| {
            [
                [Complex64::new(1.0, 0.0), i],
                [-i, Complex64::new(2.0, 0.0)],
            ][r][c]
        });
        let xe = vec![Complex64::new(0.5, -1.0), Complex64::new(2.0, 0.25)];
        let b = a.matvec(&xe);
        let x = solve_dense(a, &b).unwrap();
        for (u, v) in x.iter().zip(&xe) {
            assert!((u - v).norm() < 1e-14);
        }
    }

    #[test]
    fn singular_is_reported() {
        let a = DenseMatrix::from_fn(2, 2, |i, _| if i == 0 { 1.0 } else { 2.0 });
        assert!(matches!(
            solve_dense(a, &[1.0, 1.0]),
            Err(Error::Singular { .. })
        ));
    }

    #[test]
    fn cholesky_reconstructs() {
        let a = DenseMatrix::from_fn(3, 3, |i, j| {
            [[4.0, 2.0, 0.4], [2.0, 5.0, 1.0], [0.4, 1.0, 3.0]][i][j]
        });
        let l = cholesky(&a).unwrap();
        let llt = DenseMatrix::from_fn(3, 3, |i, j| {
            (0..3).map(|k| l[(i, k)] * l[(j, k)]).sum::<f64>()
        });
        assert!(llt.max_abs_diff(&a) < 1e-14);
        let bad = DenseMatrix::from_fn(2, 2, |i, j| if i == j { -1.0 } else { 0.0 });
        assert!(cholesky(&bad).is_err());
    }
}
