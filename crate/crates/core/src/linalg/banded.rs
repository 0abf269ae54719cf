use crate::error::{Error, Result};
use crate::scalar::{Field, Real};

/// Square banded matrix with `kl` sub- and `ku` super-diagonals.
///
/// Storage is column-major with `kl` extra rows on top reserved for fill-in
/// during pivoted factorization (LAPACK `gbtrf` layout).
#[derive(Clone, Debug)]
pub struct BandedMatrix<S> {
    n: usize,
    kl: usize,
    ku: usize,
    data: Vec<S>,
}

impl<S: Field> BandedMatrix<S> {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        Self {
            n,
            kl,
            ku,
            data: vec![S::zero(); n * (2 * kl + ku + 1)],
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets, summing duplicates.
    /// Bandwidths are taken from the triplets.
    pub fn from_triplets(n: usize, triplets: &[(usize, usize, S)]) -> Self {
        let mut kl = 0;
        let mut ku = 0;
        for &(i, j, _) in triplets {
            if i > j {
                kl = kl.max(i - j);
            } else {
                ku = ku.max(j - i);
            }
        }
        let mut m = Self::zeros(n, kl, ku);
        for &(i, j, v) in triplets {
            m.add(i, j, v);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bandwidths(&self) -> (usize, usize) {
        (self.kl, self.ku)
    }

    #[inline]
    fn ldab(&self) -> usize {
        2 * self.kl + self.ku + 1
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> usize {
        // row offset kv + i - j with kv = kl + ku
        j * self.ldab() + self.kl + self.ku + i - j
    }

    #[inline]
    fn in_band(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && i <= j + self.kl && j <= i + self.ku
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        if self.in_band(i, j) {
            self.data[self.slot(i, j)]
        } else {
            S::zero()
        }
    }

    pub fn add(&mut self, i: usize, j: usize, v: S) {
        assert!(self.in_band(i, j), "entry ({i}, {j}) outside band");
        let s = self.slot(i, j);
        self.data[s] += v;
    }

    pub fn matvec(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.n);
        let mut y = vec![S::zero(); self.n];
        for (j, &xj) in x.iter().enumerate() {
            if xj == S::zero() {
                continue;
            }
            let lo = j.saturating_sub(self.ku);
            let hi = (j + self.kl).min(self.n - 1);
            for (i, yi) in y.iter_mut().enumerate().take(hi + 1).skip(lo) {
                *yi += self.data[self.slot(i, j)] * xj;
            }
        }
        y
    }

    /// `x^H A x`.
    pub fn quad_form(&self, x: &[S]) -> S {
        super::dot(x, &self.matvec(x))
    }

    /// `alpha * self + beta * other`; bandwidths are the larger of the two.
    pub fn combine(&self, alpha: S, other: &Self, beta: S) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = Self::zeros(self.n, self.kl.max(other.kl), self.ku.max(other.ku));
        for m in [(self, alpha), (other, beta)] {
            let (src, c) = m;
            for j in 0..src.n {
                let lo = j.saturating_sub(src.ku);
                let hi = (j + src.kl).min(src.n - 1);
                for i in lo..=hi {
                    let v = src.data[src.slot(i, j)];
                    if v != S::zero() {
                        out.add(i, j, c * v);
                    }
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> super::DenseMatrix<S> {
        super::DenseMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    /// Largest `|A_ij - A_ji|` over the band.
    pub fn asymmetry(&self) -> S::Real {
        let mut worst = <S::Real as num_traits::Zero>::zero();
        let k = self.kl.max(self.ku);
        for i in 0..self.n {
            for j in i + 1..(i + k + 1).min(self.n) {
                let d = (self.get(i, j) - self.get(j, i)).modulus();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    /// LU factorization with partial pivoting.
    pub fn lu(&self) -> Result<BandedLu<S>> {
        let n = self.n;
        let (kl, ku) = (self.kl, self.ku);
        let kv = kl + ku;
        let ldab = self.ldab();
        let mut ab = self.data.clone();
        let mut piv = vec![0usize; n];
        let at = |i: usize, j: usize| j * ldab + kv + i - j;
        let mut ju = 0usize;
        for j in 0..n {
            let km = kl.min(n - 1 - j);
            let mut r = 0;
            let mut best = ab[at(j, j)].modulus();
            for rr in 1..=km {
                let m = ab[at(j + rr, j)].modulus();
                if m > best {
                    best = m;
                    r = rr;
                }
            }
            piv[j] = j + r;
            if best == num_traits::Zero::zero() {
                return Err(Error::Singular { row: j, pivot: 0.0 });
            }
            ju = ju.max((j + ku + r).min(n - 1));
            if r != 0 {
                for c in j..=ju {
                    ab.swap(at(j, c), at(j + r, c));
                }
            }
            if km > 0 {
                let inv = S::one() / ab[at(j, j)];
                for rr in 1..=km {
                    ab[at(j + rr, j)] *= inv;
                }
                for c in j + 1..=ju {
                    let t = ab[at(j, c)];
                    if t == S::zero() {
                        continue;
                    }
                    for rr in 1..=km {
                        let l = ab[at(j + rr, j)];
                        ab[at(j + rr, c)] -= l * t;
                    }
                }
            }
        }
        Ok(BandedLu {
            n,
            kl,
            kv,
            ldab,
            ab,
            piv,
        })
    }
}

/// Pivoted LU factors of a [`BandedMatrix`].
#[derive(Clone, Debug)]
pub struct BandedLu<S> {
    n: usize,
    kl: usize,
    kv: usize,
    ldab: usize,
    ab: Vec<S>,
    piv: Vec<usize>,
}

impl<S: Field> BandedLu<S> {
    #[inline]
    fn at(&self, i: usize, j: usize) -> usize {
        j * self.ldab + self.kv + i - j
    }

    pub fn solve_in_place(&self, b: &mut [S]) {
        let n = self.n;
        assert_eq!(b.len(), n);
        if self.kl > 0 {
            for j in 0..n.saturating_sub(1) {
                let lm = self.kl.min(n - 1 - j);
                let l = self.piv[j];
                if l != j {
                    b.swap(l, j);
                }
                let bj = b[j];
                if bj != S::zero() {
                    for rr in 1..=lm {
                        b[j + rr] -= self.ab[self.at(j + rr, j)] * bj;
                    }
                }
            }
        }
        for j in (0..n).rev() {
            b[j] /= self.ab[self.at(j, j)];
            let bj = b[j];
            if bj == S::zero() {
                continue;
            }
            for i in j.saturating_sub(self.kv)..j {
                b[i] -= self.ab[self.at(i, j)] * bj;
            }
        }
    }

    pub fn solve(&self, b: &[S]) -> Vec<S> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x);
        x
    }

    /// Smallest pivot modulus of `U`; zero signals a singular factorization.
    pub fn min_pivot(&self) -> S::Real {
        use num_traits::Float;
        (0..self.n)
            .map(|j| self.ab[self.at(j, j)].modulus())
            .fold(<S::Real as Float>::infinity(), |a, b| a.min(b))
    }
}


impl<T: Real> BandedMatrix<T> {
    /// Cholesky factorization `A = L L^T` of a symmetric positive definite
    /// matrix, reading only the lower band. Fails with [`Error::Singular`]
    /// at the first non-positive pivot.
    pub fn cholesky(&self) -> Result<BandedCholesky<T>> {
        let n = self.n;
        let k = self.kl.max(self.ku);
        let w = k + 1;
        // row i holds L[i][i-k..=i] at offsets 0..=k
        let mut l = vec![T::zero(); n * w];
        for i in 0..n {
            let j0 = i.saturating_sub(k);
            for j in j0..=i {
                let mut sum = self.get(i, j);
                let m0 = j0.max(j.saturating_sub(k));
                for m in m0..j {
                    sum -= l[i * w + m + k - i] * l[j * w + m + k - j];
                }
                if j == i {
                    if !(sum > T::zero()) {
                        return Err(Error::Singular {
                            row: i,
                            pivot: sum.f64(),
                        });
                    }
                    l[i * w + k] = sum.sqrt();
                } else {
                    l[i * w + j + k - i] = sum / l[j * w + k];
                }
            }
        }
        Ok(BandedCholesky { n, k, l })
    }
}

/// Factor produced by [`BandedMatrix::cholesky`].
#[derive(Clone, Debug)]
pub struct BandedCholesky<T> {
    n: usize,
    k: usize,
    l: Vec<T>,
}

impl<T: Real> BandedCholesky<T> {
    pub fn solve_in_place(&self, b: &mut [T]) {
        let (n, k) = (self.n, self.k);
        let w = k + 1;
        for i in 0..n {
            let mut s = b[i];
            for m in i.saturating_sub(k)..i {
                s -= self.l[i * w + m + k - i] * b[m];
            }
            b[i] = s / self.l[i * w + k];
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            for m in i + 1..(i + k + 1).min(n) {
                s -= self.l[m * w + i + k - m] * b[m];
            }
            b[i] = s / self.l[i * w + k];
        }
    }

    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x);
        x
    }
}
