use crate::equilibrium::{EquilibriumProfile, Layer, PhysicalParams};
use crate::scalar::Real;

use super::GrowingMode;

/// Strong-form residuals of the normal-mode boundary value problem.
///
/// Interior entries are discrete L2 norms over element midpoints; the rest
/// are absolute values of the boundary and jump conditions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OdeResidual<T> {
    pub phi_interior: T,
    pub psi_interior: T,
    /// Largest horizontal velocity component orthogonal to `xi`.
    pub theta: T,
    pub top_shear: T,
    pub top_normal: T,
    pub interface_continuity: T,
    pub interface_shear: T,
    pub interface_normal: T,
    pub bottom_phi: T,
    pub bottom_psi: T,
}

impl<T: Real> OdeResidual<T> {
    pub fn max(&self) -> T {
        [
            self.phi_interior,
            self.psi_interior,
            self.theta,
            self.top_shear,
            self.top_normal,
            self.interface_continuity,
            self.interface_shear,
            self.interface_normal,
            self.bottom_phi,
            self.bottom_psi,
        ]
        .into_iter()
        .fold(T::zero(), T::max)
    }
}

/// Per-layer samples with recovered nodal gradients.
struct LayerData<T> {
    x: Vec<T>,
    phi: Vec<T>,
    psi: Vec<T>,
    dphi: Vec<T>,
    dpsi: Vec<T>,
}

fn recover<T: Real>(x: &[T], v: &[T]) -> Vec<T> {
    let s: Vec<T> = x
        .windows(2)
        .zip(v.windows(2))
        .map(|(x, v)| (v[1] - v[0]) / (x[1] - x[0]))
        .collect();
    let m = s.len();
    let (a, b) = (T::of(1.5), T::of(0.5));
    let mut g = Vec::with_capacity(m + 1);
    g.push(if m > 1 { a * s[0] - b * s[1] } else { s[0] });
    for i in 1..m {
        g.push(b * (s[i - 1] + s[i]));
    }
    g.push(if m > 1 {
        a * s[m - 1] - b * s[m - 2]
    } else {
        s[m - 1]
    });
    g
}

/// Evaluates all residuals for `mode` (any orientation of `xi`).
pub fn ode_residual<T: Real>(
    mode: &GrowingMode<T>,
    profile: &EquilibriumProfile<T>,
    params: &PhysicalParams<T>,
) -> OdeResidual<T> {
    let k = mode.xi_abs();
    let lam = mode.lambda;
    let (c, s) = if k > T::zero() {
        (mode.xi[0] / k, mode.xi[1] / k)
    } else {
        (T::one(), T::zero())
    };
    // component along xi and the orthogonal remainder
    let along: Vec<T> = mode
        .phi
        .iter()
        .zip(&mode.theta)
        .map(|(&p, &t)| c * p + s * t)
        .collect();
    let theta = mode
        .phi
        .iter()
        .zip(&mode.theta)
        .map(|(&p, &t)| (-s * p + c * t).abs())
        .fold(T::zero(), T::max);

    let i0 = mode.interface_row;
    let n = mode.x3.len();
    let layer_data = |range: std::ops::Range<usize>| {
        let x = mode.x3[range.clone()].to_vec();
        let phi = along[range.clone()].to_vec();
        let psi = mode.psi[range].to_vec();
        let dphi = recover(&x, &phi);
        let dpsi = recover(&x, &psi);
        LayerData {
            x,
            phi,
            psi,
            dphi,
            dpsi,
        }
    };
    let lower = layer_data(0..i0 + 1);
    let upper = layer_data(i0 + 1..n);

    let third = T::one() / T::of(3.0);
    let mut r_phi = T::zero();
    let mut r_psi = T::zero();
    for (layer, d) in [(Layer::Lower, &lower), (Layer::Upper, &upper)] {
        let law = profile.law(layer);
        let mu = params.mu(layer) * lam;
        let mu_b = params.mu_prime(layer) * lam;
        for e in 0..d.x.len() - 1 {
            let h = d.x[e + 1] - d.x[e];
            let half = T::of(0.5);
            let x = d.x[e] + half * h;
            let phi = half * (d.phi[e] + d.phi[e + 1]);
            let psi = half * (d.psi[e] + d.psi[e + 1]);
            let dphi = (d.phi[e + 1] - d.phi[e]) / h;
            let dpsi = (d.psi[e + 1] - d.psi[e]) / h;
            let d2phi = (d.dphi[e + 1] - d.dphi[e]) / h;
            let d2psi = (d.dpsi[e + 1] - d.dpsi[e]) / h;

            let rho = profile.density(layer, x);
            let drho = profile.density_slope(layer, x);
            let d2rho = profile.density_curvature(layer, x);
            let p1 = law.dpressure(rho);
            let p2 = law.d2pressure(rho);
            let hp = p1 / rho;
            let dhp = drho * (rho * p2 - p1) / (rho * rho);
            let w = drho * psi + rho * dpsi;
            let dw = d2rho * psi + T::of(2.0) * drho * dpsi + rho * d2psi;
            let mix = mu_b + mu * third;

            let rp = -mu * d2phi
                + (lam * lam * rho + mu * k * k + k * k * (mix + p1 * rho)) * phi
                + k * (mix * dpsi + p1 * w);
            let rs = -(T::of(4.0) * mu * third + mu_b) * d2psi - rho * (dhp * w + hp * dw)
                + (lam * lam * rho + mu * k * k) * psi
                - mix * k * dphi
                - rho * k * (p2 * drho * phi + p1 * dphi);
            r_phi += h * rp * rp;
            r_psi += h * rs * rs;
        }
    }

    // boundary quantities from one-sided recovered derivatives
    let g = profile.gravity();
    let traction = |layer: Layer, d: &LayerData<T>, j: usize| {
        let law = profile.law(layer);
        let mu = params.mu(layer) * lam;
        let mu_b = params.mu_prime(layer) * lam;
        let x = d.x[j];
        let rho = profile.density(layer, x);
        let drho = profile.density_slope(layer, x);
        let (phi, psi, dphi, dpsi) = (d.phi[j], d.psi[j], d.dphi[j], d.dpsi[j]);
        let w = drho * psi + rho * dpsi;
        let shear = mu * (k * psi - dphi);
        let normal = (mu_b + mu * third) * (dpsi + k * phi)
            + law.dpressure(rho) * (w + rho * k * phi)
            + mu * (dpsi - k * phi);
        (shear, normal)
    };
    let top = upper.x.len() - 1;
    let (shear_top, normal_top) = traction(Layer::Upper, &upper, top);
    let k2 = k * k;
    let top_normal =
        (normal_top + (profile.rho1 * g + params.sigma_plus * k2) * upper.psi[top]).abs();
    let (shear_lo, normal_lo) = traction(Layer::Lower, &lower, lower.x.len() - 1);
    let (shear_hi, normal_hi) = traction(Layer::Upper, &upper, 0);
    let psi0 = upper.psi[0];
    let interface_normal =
        (normal_hi - normal_lo + (profile.jump * g - params.sigma_minus * k2) * psi0).abs();

    let last = lower.x.len() - 1;
    let continuity = (upper.phi[0] - lower.phi[last]).abs()
        + (upper.psi[0] - lower.psi[last]).abs()
        + (mode.theta[i0 + 1] - mode.theta[i0]).abs();

    OdeResidual {
        phi_interior: r_phi.sqrt(),
        psi_interior: r_psi.sqrt(),
        theta,
        top_shear: shear_top.abs(),
        top_normal,
        interface_continuity: continuity,
        interface_shear: (shear_hi - shear_lo).abs(),
        interface_normal,
        bottom_phi: lower.phi[0].abs(),
        bottom_psi: lower.psi[0].abs(),
    }
}
