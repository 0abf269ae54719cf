//! Growing-mode profiles built from a converged dispersion point.

mod io;
mod residual;

pub use io::{export_mode, import_mode, sidecar_path};
pub use residual::{ode_residual, OdeResidual};

use crate::dispersion::{probe::project_piecewise_constant, DispersionPoint};
use crate::equilibrium::{EquilibriumProfile, Layer, PhysicalParams};
use crate::error::{Error, Result};
use crate::quadrature::gauss4;
use crate::scalar::Real;
use crate::variational::Mesh1D;

/// Real vertical profiles of a normal mode `(-i phi, -i theta, psi)
/// e^{i xi.x' + lambda t}` together with density and interface amplitudes.
///
/// Profiles are sampled on the mesh nodes with the interface node listed
/// twice (lower trace first) because the density perturbation jumps there.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowingMode<T> {
    pub xi: [T; 2],
    pub lambda: T,
    pub x3: Vec<T>,
    pub phi: Vec<T>,
    pub theta: Vec<T>,
    pub psi: Vec<T>,
    pub q_tilde: Vec<T>,
    pub eta_plus: T,
    pub eta_minus: T,
    /// Row of the lower interface trace; the upper trace is the next row.
    pub interface_row: usize,
}

impl<T: Real> GrowingMode<T> {
    pub fn xi_abs(&self) -> T {
        self.xi[0].hypot(self.xi[1])
    }

    /// Node coordinates without the duplicated interface row.
    pub fn nodes(&self) -> Vec<T> {
        dedup(&self.x3, self.interface_row)
    }

    /// `phi`, `theta`, `psi` at the mesh nodes (no duplicate).
    pub fn nodal_fields(&self) -> [Vec<T>; 3] {
        let i = self.interface_row;
        [
            dedup(&self.phi, i),
            dedup(&self.theta, i),
            dedup(&self.psi, i),
        ]
    }

    /// `|eta_-|` in L2 of the periodic cell for a single Fourier mode.
    pub fn eta_minus_norm(&self, params: &PhysicalParams<T>) -> T {
        let two_pi = T::PI() + T::PI();
        self.eta_minus.abs() * two_pi * (params.l1 * params.l2).sqrt()
    }
}

fn dedup<T: Copy>(v: &[T], interface_row: usize) -> Vec<T> {
    v.iter()
        .enumerate()
        .filter(|&(i, _)| i != interface_row + 1)
        .map(|(_, &x)| x)
        .collect()
}

/// Inserts a duplicate of the interface value.
fn split<T: Copy>(v: &[T], interface_node: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(v.len() + 1);
    out.extend_from_slice(&v[..=interface_node]);
    out.extend_from_slice(&v[interface_node..]);
    out
}

/// Nodal derivative of the interpolant of `rho psi`: elementwise slopes
/// projected in L2 onto continuous piecewise-linears, separately per layer.
/// Returned on the split grid.
pub(crate) fn density_flux_derivative<T: Real>(
    profile: &EquilibriumProfile<T>,
    mesh: &Mesh1D<T>,
    psi: &[T],
) -> Vec<T> {
    let nodes = mesh.nodes();
    let i0 = mesh.interface_node();
    let mut out = Vec::with_capacity(nodes.len() + 1);
    for (layer, range) in [(Layer::Lower, 0..i0 + 1), (Layer::Upper, i0..nodes.len())] {
        let xs = &nodes[range.clone()];
        let ps = &psi[range];
        let flux: Vec<T> = xs
            .iter()
            .zip(ps)
            .map(|(&x, &p)| profile.density(layer, x) * p)
            .collect();
        let slopes: Vec<T> = xs
            .windows(2)
            .zip(flux.windows(2))
            .map(|(x, f)| (f[1] - f[0]) / (x[1] - x[0]))
            .collect();
        out.extend(project_piecewise_constant(xs, &slopes));
    }
    out
}

/// Builds the growing mode at `xi = (|xi|, 0)` with `theta = 0`, scaled so
/// that `|eta_-| 2 pi sqrt(L1 L2) = 1`.
///
/// The density perturbation is `q = -(D + rho |xi| phi) / lambda` at the
/// nodes, with `D` from [`density_flux_derivative`].
pub fn assemble_mode<T: Real>(
    point: &DispersionPoint<T>,
    profile: &EquilibriumProfile<T>,
    mesh: &Mesh1D<T>,
    params: &PhysicalParams<T>,
) -> Result<GrowingMode<T>> {
    let lambda = point.lambda;
    if !(lambda > T::zero()) {
        return Err(Error::InvalidInput(format!(
            "growing mode needs lambda > 0, got {lambda}"
        )));
    }
    if point.minimizer.len() != mesh.dof_count() {
        return Err(Error::InvalidInput(
            "minimizer does not match the mesh".into(),
        ));
    }
    let phi = mesh.phi(&point.minimizer);
    let psi = mesh.psi(&point.minimizer);
    let i0 = mesh.interface_node();
    let psi0 = psi[i0];
    if psi0.abs() < T::of(1e-10) {
        return Err(Error::DegenerateMode { psi0: psi0.f64() });
    }
    let k = point.xi_abs;
    let d = density_flux_derivative(profile, mesh, &psi);
    let x3 = split(mesh.nodes(), i0);
    let phi_s = split(&phi, i0);
    let psi_s = split(&psi, i0);
    let q: Vec<T> = (0..x3.len())
        .map(|r| {
            let layer = if r <= i0 { Layer::Lower } else { Layer::Upper };
            let rho = profile.density(layer, x3[r]);
            -(d[r] + rho * k * phi_s[r]) / lambda
        })
        .collect();

    let two_pi = T::PI() + T::PI();
    let eta_minus = psi0 / lambda;
    let scale = T::one() / (eta_minus.abs() * two_pi * (params.l1 * params.l2).sqrt());
    let sc = |v: Vec<T>| v.into_iter().map(|x| x * scale).collect::<Vec<_>>();
    Ok(GrowingMode {
        xi: [k, T::zero()],
        lambda,
        theta: vec![T::zero(); x3.len()],
        x3,
        phi: sc(phi_s),
        psi: sc(psi_s),
        q_tilde: sc(q),
        eta_plus: psi[mesh.top_node()] / lambda * scale,
        eta_minus: eta_minus * scale,
        interface_row: i0,
    })
}

/// Largest `|lambda q + D + |xi| I(rho phi)|` over element quadrature points,
/// every term taken as the piecewise-linear interpolant of its nodal values.
pub fn continuity_residual<T: Real>(
    mode: &GrowingMode<T>,
    profile: &EquilibriumProfile<T>,
    mesh: &Mesh1D<T>,
) -> T {
    let [_, _, psi] = mode.nodal_fields();
    let d = density_flux_derivative(profile, mesh, &psi);
    let k = mode.xi_abs();
    let i0 = mode.interface_row;
    let nodal: Vec<T> = (0..mode.x3.len())
        .map(|r| {
            let layer = if r <= i0 { Layer::Lower } else { Layer::Upper };
            let rho = profile.density(layer, mode.x3[r]);
            mode.lambda * mode.q_tilde[r] + d[r] + k * rho * mode.phi[r]
        })
        .collect();
    let mut worst = T::zero();
    for r in 0..mode.x3.len() - 1 {
        if r == i0 {
            continue;
        }
        for &(t, _) in &gauss4::<T>() {
            let v = (T::one() - t) * nodal[r] + t * nodal[r + 1];
            worst = worst.max(v.abs());
        }
    }
    worst
}

/// 2x2 rotation check with tolerance `1e-12`.
fn check_rotation<T: Real>(r: [[T; 2]; 2]) -> Result<()> {
    let tol = T::of(1e-12);
    let det = r[0][0] * r[1][1] - r[0][1] * r[1][0];
    let mut defect = T::zero();
    for i in 0..2 {
        for j in 0..2 {
            let dot = r[0][i] * r[0][j] + r[1][i] * r[1][j];
            let target = if i == j { T::one() } else { T::zero() };
            defect = defect.max((dot - target).abs());
        }
    }
    if defect > tol || (det - T::one()).abs() > tol || !det.is_finite() {
        return Err(Error::NotARotation {
            defect: defect.f64(),
            det: det.f64(),
        });
    }
    Ok(())
}

/// Mode at `R xi`: `(phi, theta) -> R (phi, theta)`, everything else unchanged.
pub fn rotate_mode<T: Real>(mode: &GrowingMode<T>, r: [[T; 2]; 2]) -> Result<GrowingMode<T>> {
    check_rotation(r)?;
    let apply = |a: T, b: T| [r[0][0] * a + r[0][1] * b, r[1][0] * a + r[1][1] * b];
    let mut out = mode.clone();
    out.xi = apply(mode.xi[0], mode.xi[1]);
    for (i, (&p, &t)) in mode.phi.iter().zip(&mode.theta).enumerate() {
        let [a, b] = apply(p, t);
        out.phi[i] = a;
        out.theta[i] = b;
    }
    Ok(out)
}

/// Rotation matrix for angle `angle` (radians).
pub fn rotation<T: Real>(angle: T) -> [[T; 2]; 2] {
    let (s, c) = angle.sin_cos();
    [[c, -s], [s, c]]
}

#[cfg(test)]
mod tests;
