//! Small self-contained linear algebra kernels.
//!
//! The matrices met here are either small and dense (oracles, Vandermonde
//! systems, reduced eigenproblems) or banded (finite-element operators on a
//! 1D mesh). Both layouts are generic over [`Field`](crate::scalar::Field).

mod banded;
mod dense;
mod symeig;

pub use banded::{BandedCholesky, BandedLu, BandedMatrix};
pub use dense::{cholesky, solve_dense, DenseMatrix};
pub use symeig::{sym_eigen, SymEigen};

use crate::scalar::Field;

pub fn dot<S: Field>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (&x, &y)| acc + x.conj() * y)
}

pub fn norm2<S: Field>(a: &[S]) -> S::Real {
    use num_traits::Float;
    a.iter()
        .fold(<S::Real as num_traits::Zero>::zero(), |acc, x| {
            let m = x.modulus();
            acc + m * m
        })
        .sqrt()
}

pub fn axpy<S: Field>(alpha: S, x: &[S], y: &mut [S]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}
