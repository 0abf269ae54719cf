use statrs::function::gamma::ln_gamma;

use crate::equilibrium::{EquilibriumProfile, PhysicalParams};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::variational::{assemble_forms, evaluate_energy, Mesh1D};

/// Energy and constraint at a trial vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeValue<T> {
    pub energy: T,
    pub constraint: T,
}

impl<T: Real> ProbeValue<T> {
    /// `E / J`, an upper bound for `alpha(s)` on the same mesh.
    pub fn quotient(&self) -> T {
        self.energy / self.constraint
    }
}

/// Bump `(1 - x^2 / d^2)^(p/2)` with `d = ell` above the interface and
/// `d = b` below.
pub fn probe_profile<T: Real>(x3: T, b: T, ell: T, exponent: T) -> T {
    let d = if x3 >= T::zero() { ell } else { b };
    let base = T::one() - (x3 / d) * (x3 / d);
    if base <= T::zero() {
        T::zero()
    } else {
        base.powf(exponent / T::of(2.0))
    }
}

/// `int psi^2 = sqrt(pi) (b + ell) Gamma(p + 1) / (2 Gamma(p + 3/2))`.
pub fn probe_norm_squared<T: Real>(b: T, ell: T, exponent: T) -> T {
    let p = exponent.f64();
    let ratio = (ln_gamma(p + 1.0) - ln_gamma(p + 1.5)).exp();
    T::of(std::f64::consts::PI.sqrt() * ratio / 2.0) * (b + ell)
}

/// Evaluates `E(phi, psi; s)` and `J(phi, psi)` at the interpolated bump
/// `psi` with `phi = -psi' / |xi|`, where `psi'` is the elementwise slope
/// of the interpolant, L2-projected onto the nodal space.
pub fn negativity_probe<T: Real>(
    profile: &EquilibriumProfile<T>,
    xi_abs: T,
    s: T,
    mesh: &Mesh1D<T>,
    params: &PhysicalParams<T>,
    exponent: T,
) -> Result<ProbeValue<T>> {
    if !(exponent >= T::of(5.0)) {
        return Err(Error::InvalidInput(format!(
            "probe exponent {exponent} must be at least 5"
        )));
    }
    if !(xi_abs > T::zero()) {
        return Err(Error::InvalidInput(format!(
            "|xi| = {xi_abs} must be positive"
        )));
    }
    let (b, ell) = (params.b, params.ell);
    let nodes = mesh.nodes();
    let psi: Vec<T> = nodes
        .iter()
        .map(|&x| probe_profile(x, b, ell, exponent))
        .collect();
    let slopes: Vec<T> = nodes
        .windows(2)
        .zip(psi.windows(2))
        .map(|(x, p)| (p[1] - p[0]) / (x[1] - x[0]))
        .collect();
    let dpsi = project_piecewise_constant(nodes, &slopes);
    let phi: Vec<T> = dpsi.iter().map(|&d| -d / xi_abs).collect();
    let v = mesh.pack(&[&phi, &psi]);
    let forms = assemble_forms(mesh, profile, xi_abs, params);
    let (energy, constraint) = evaluate_energy(&forms, &v, s);
    Ok(ProbeValue { energy, constraint })
}

/// L2 projection of a piecewise-constant function onto continuous P1
/// (tridiagonal mass solve).
pub(crate) fn project_piecewise_constant<T: Real>(nodes: &[T], values: &[T]) -> Vec<T> {
    let n = nodes.len();
    let mut diag = vec![T::zero(); n];
    let mut off = vec![T::zero(); n - 1];
    let mut rhs = vec![T::zero(); n];
    let (third, sixth, half) = (T::one() / T::of(3.0), T::one() / T::of(6.0), T::of(0.5));
    for e in 0..n - 1 {
        let h = nodes[e + 1] - nodes[e];
        diag[e] += third * h;
        diag[e + 1] += third * h;
        off[e] += sixth * h;
        rhs[e] += half * h * values[e];
        rhs[e + 1] += half * h * values[e];
    }
    // Thomas algorithm; the P1 mass matrix is diagonally dominant
    for i in 1..n {
        let w = off[i - 1] / diag[i - 1];
        diag[i] -= w * off[i - 1];
        rhs[i] = rhs[i] - w * rhs[i - 1];
    }
    let mut x = vec![T::zero(); n];
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = (rhs[i] - off[i] * x[i + 1]) / diag[i];
    }
    x
}
