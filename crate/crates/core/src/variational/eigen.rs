use std::io::Write;

use crate::error::{Error, Result};
use crate::linalg::{cholesky, sym_eigen, BandedMatrix, DenseMatrix};
use crate::scalar::Real;

use super::QuadraticForms;

/// Settings for the smallest-eigenpair solvers.
#[derive(Clone, Copy, Debug)]
pub struct EigenOptions<T> {
    /// Relative residual `|A x - a M x| / (|A x| + |a| |M x|)` accepted by
    /// the iterative solver.
    pub tol: T,
    pub krylov_dim: usize,
    pub max_restarts: usize,
    /// Systems with at most this many unknowns use the dense solver.
    pub dense_limit: usize,
}

impl<T: Real> Default for EigenOptions<T> {
    fn default() -> Self {
        Self {
            tol: T::of(1e-10),
            krylov_dim: 40,
            max_restarts: 200,
            dense_limit: 100,
        }
    }
}

/// Smallest eigenpair of `(K0 + s K1) v = alpha M v`, normalized to
/// `v^T M v = 1` with a non-negative vertical component at the interface.
pub fn min_eig<T: Real>(forms: &QuadraticForms<T>, s: T) -> Result<(T, Vec<T>)> {
    min_eig_with(forms, s, &EigenOptions::default(), None)
}

/// [`min_eig`] with explicit options and an optional starting vector for the
/// iterative path (ignored by the dense path).
pub fn min_eig_with<T: Real>(
    forms: &QuadraticForms<T>,
    s: T,
    opts: &EigenOptions<T>,
    start: Option<&[T]>,
) -> Result<(T, Vec<T>)> {
    let a = forms.energy_matrix(s);
    let (value, mut v) = if forms.dof_count() <= opts.dense_limit {
        pencil_min_dense(&a, &forms.m)?
    } else {
        pencil_min_lanczos(&a, &forms.m, forms.lower_bound, opts, start)?
    };
    fix_sign(&mut v, forms.interface_dof);
    Ok((value, v))
}

fn fix_sign<T: Real>(v: &mut [T], pivot: usize) {
    let flip = if v[pivot] != T::zero() {
        v[pivot] < T::zero()
    } else {
        let big = v
            .iter()
            .copied()
            .fold(T::zero(), |m, x| if x.abs() > m.abs() { x } else { m });
        big < T::zero()
    };
    if flip {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// `(v^T (K0 + s K1) v, v^T M v)`.
pub fn evaluate_energy<T: Real>(forms: &QuadraticForms<T>, v: &[T], s: T) -> (T, T) {
    let e = forms.k0.quad_form(v) + s * forms.k1.quad_form(v);
    (e, forms.m.quad_form(v))
}

/// Dense generalized solve through the Cholesky factor of `M`.
pub fn pencil_min_dense<T: Real>(a: &BandedMatrix<T>, m: &BandedMatrix<T>) -> Result<(T, Vec<T>)> {
    let n = a.n();
    let l = cholesky(&m.to_dense())?;
    // C = L^-1 A L^-T, built column by column
    let mut b = DenseMatrix::zeros(n, n);
    let ad = a.to_dense();
    for j in 0..n {
        let col: Vec<T> = (0..n).map(|i| ad[(i, j)]).collect();
        let y = forward(&l, &col);
        for i in 0..n {
            b[(i, j)] = y[i];
        }
    }
    let mut c = DenseMatrix::zeros(n, n);
    for i in 0..n {
        let y = forward(&l, b.row(i));
        for j in 0..n {
            c[(i, j)] = y[j];
        }
    }
    let half = T::of(0.5);
    let c = DenseMatrix::from_fn(n, n, |i, j| half * (c[(i, j)] + c[(j, i)]));
    let eig = sym_eigen(&c)?;
    let v = backward_transposed(&l, &eig.vector(0));
    Ok((eig.values[0], v))
}

fn forward<T: Real>(l: &DenseMatrix<T>, b: &[T]) -> Vec<T> {
    let n = b.len();
    let mut y = b.to_vec();
    for i in 0..n {
        let mut s = y[i];
        for k in 0..i {
            s -= l[(i, k)] * y[k];
        }
        y[i] = s / l[(i, i)];
    }
    y
}

/// Solves `L^T x = y`.
fn backward_transposed<T: Real>(l: &DenseMatrix<T>, y: &[T]) -> Vec<T> {
    let n = y.len();
    let mut x = y.to_vec();
    for i in (0..n).rev() {
        let mut s = x[i];
        for k in i + 1..n {
            s -= l[(k, i)] * x[k];
        }
        x[i] = s / l[(i, i)];
    }
    x
}

fn m_dot<T: Real>(a: &[T], mb: &[T]) -> T {
    a.iter().zip(mb).map(|(&x, &y)| x * y).sum()
}

/// Shift-invert Lanczos for the smallest eigenpair of `A x = a M x`.
///
/// The shift starts at `hint` and is lowered until `A - shift M` admits a
/// Cholesky factorization, so the shifted operator is positive definite and
/// the wanted eigenvalue maps to the largest one of `(A - shift M)^-1 M`.
/// Full reorthogonalization in the `M` inner product; explicit restarts
/// from the current Ritz vector.
pub fn pencil_min_lanczos<T: Real>(
    a: &BandedMatrix<T>,
    m: &BandedMatrix<T>,
    hint: T,
    opts: &EigenOptions<T>,
    start: Option<&[T]>,
) -> Result<(T, Vec<T>)> {
    let n = a.n();
    let mut shift = hint - T::of(1e-3) * (T::one() + hint.abs());
    let factor = {
        let mut tries = 0;
        loop {
            match a.combine(T::one(), m, -shift).cholesky() {
                Ok(f) => break f,
                Err(_) if tries < 60 => {
                    shift = shift - T::of(2.0) * (shift.abs() + T::one());
                    tries += 1;
                }
                Err(e) => return Err(e),
            }
        }
    };
    let kdim = opts.krylov_dim.clamp(1, n);
    let mut x: Vec<T> = match start {
        Some(s) if s.len() == n && s.iter().any(|v| *v != T::zero()) => s.to_vec(),
        _ => (0..n)
            .map(|i| T::one() + T::of(0.5) * (T::of_usize(i) * T::of(0.7)).sin())
            .collect(),
    };
    let mut last_res = T::infinity();

    for _ in 0..opts.max_restarts.max(1) {
        let mut basis: Vec<Vec<T>> = Vec::with_capacity(kdim + 1);
        let mut mbasis: Vec<Vec<T>> = Vec::with_capacity(kdim + 1);
        let mx = m.matvec(&x);
        let nrm = m_dot(&x, &mx).sqrt();
        basis.push(x.iter().map(|&v| v / nrm).collect());
        mbasis.push(mx.iter().map(|&v| v / nrm).collect());
        let mut diag = Vec::with_capacity(kdim);
        let mut off: Vec<T> = Vec::with_capacity(kdim);
        let mut invariant = false;

        for j in 0..kdim {
            let mut w = factor.solve(&mbasis[j]);
            let aj = m_dot(&w, &mbasis[j]);
            diag.push(aj);
            for _ in 0..2 {
                for (v, mv) in basis.iter().zip(&mbasis) {
                    let c = m_dot(&w, mv);
                    w.iter_mut().zip(v).for_each(|(wi, &vi)| *wi -= c * vi);
                }
            }
            let mw = m.matvec(&w);
            let bj = m_dot(&w, &mw).max(T::zero()).sqrt();
            if bj <= T::epsilon() * T::of(16.0) * aj.abs() {
                invariant = true;
                break;
            }
            if j + 1 == kdim {
                break;
            }
            off.push(bj);
            basis.push(w.iter().map(|&v| v / bj).collect());
            mbasis.push(mw.iter().map(|&v| v / bj).collect());
        }

        let k = diag.len();
        let t = DenseMatrix::from_fn(k, k, |i, j| {
            if i == j {
                diag[i]
            } else if i == j + 1 {
                off[j]
            } else if j == i + 1 {
                off[i]
            } else {
                T::zero()
            }
        });
        let eig = sym_eigen(&t)?;
        let y = eig.vector(k - 1);
        x = vec![T::zero(); n];
        for (c, v) in y.iter().zip(&basis) {
            x.iter_mut().zip(v).for_each(|(xi, &vi)| *xi += *c * vi);
        }

        let ax = a.matvec(&x);
        let mx = m.matvec(&x);
        let jn = m_dot(&x, &mx);
        let rq = m_dot(&x, &ax) / jn;
        let scale = x.iter().map(|v| v.abs()).fold(T::zero(), T::max);
        let num = ax
            .iter()
            .zip(&mx)
            .map(|(&p, &q)| (p - rq * q).abs())
            .fold(T::zero(), T::max);
        let den = ax.iter().map(|v| v.abs()).fold(T::zero(), T::max)
            + rq.abs() * mx.iter().map(|v| v.abs()).fold(T::zero(), T::max);
        let res = num / (den + T::min_positive_value() * scale);
        last_res = res;
        if res <= opts.tol || invariant {
            let inv = jn.sqrt().recip();
            x.iter_mut().for_each(|v| *v *= inv);
            return Ok((rq, x));
        }
    }
    Err(Error::SolverDivergence {
        iterations: opts.max_restarts,
        residual: last_res.f64(),
    })
}

/// Writes the band of a matrix as `row col value` lines (zero-based).
pub fn write_coo<T: Real, W: Write>(a: &BandedMatrix<T>, mut out: W) -> std::io::Result<()> {
    let (kl, ku) = a.bandwidths();
    writeln!(out, "% {} {}", a.n(), a.n())?;
    for i in 0..a.n() {
        for j in i.saturating_sub(kl)..(i + ku + 1).min(a.n()) {
            let v = a.get(i, j);
            if v != T::zero() {
                writeln!(out, "{i} {j} {v:.16e}")?;
            }
        }
    }
    Ok(())
}
