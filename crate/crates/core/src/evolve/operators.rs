use num_complex::Complex;

use crate::equilibrium::{EquilibriumProfile, Layer, PhysicalParams};
use crate::error::{Error, Result};
use crate::linalg::{BandedLu, BandedMatrix};
use crate::quadrature::gauss4;
use crate::scalar::Real;
use crate::variational::{surface_coefficients, Mesh1D, SurfaceCoefficients};

type C<T> = Complex<T>;

/// Fourier coefficients of `(q, u, eta_+, eta_-)` at one horizontal
/// frequency.
///
/// `q_hat` lives on the split grid (mesh nodes with the interface listed
/// twice, lower trace first); `u_hat` is single-valued on the mesh nodes and
/// its first entry, at the rigid bottom, stays zero.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyState<T> {
    pub q_hat: Vec<C<T>>,
    pub u_hat: Vec<[C<T>; 3]>,
    pub eta_hat_plus: C<T>,
    pub eta_hat_minus: C<T>,
    pub time: T,
}

/// Position of every unknown in the global vector. Unknowns are interleaved
/// node by node so that all operators are banded.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    /// Global index of each split-grid density value.
    pub q: Vec<usize>,
    /// Global indices of the velocity components (none at the bottom node).
    pub u: Vec<Option<[usize; 3]>>,
    pub eta_minus: usize,
    pub eta_plus: usize,
    pub interface: usize,
    pub len: usize,
}

impl Layout {
    fn new(n_nodes: usize, interface: usize) -> Self {
        let mut next = 0;
        let mut take = || {
            next += 1;
            next - 1
        };
        let mut q = vec![0; n_nodes + 1];
        let mut u = vec![None; n_nodes];
        let mut eta_minus = 0;
        for i in 0..n_nodes {
            if i <= interface {
                q[i] = take();
            }
            if i >= interface {
                q[i + 1] = take();
            }
            if i > 0 {
                u[i] = Some([take(), take(), take()]);
            }
            if i == interface {
                eta_minus = take();
            }
        }
        let eta_plus = take();
        Self {
            q,
            u,
            eta_minus,
            eta_plus,
            interface,
            len: eta_plus + 1,
        }
    }
}

/// Semi-discrete linearized system `M dy/dt = L y` at one frequency, with
/// continuous piecewise-linear density (split at the interface) and
/// velocity, plus the two interface amplitudes.
#[derive(Clone, Debug)]
pub struct Semidiscrete<T: Real> {
    pub xi: [T; 2],
    /// Restoring coefficients multiplying `eta_+` and `eta_-`.
    pub coefficients: SurfaceCoefficients<T>,
    pub mass: BandedMatrix<C<T>>,
    pub operator: BandedMatrix<C<T>>,
    /// Weight matrix of the total energy `y^H E y / 2`.
    pub energy: BandedMatrix<C<T>>,
    /// Viscous form `a(u, u)`, embedded in the global numbering.
    pub viscous: BandedMatrix<C<T>>,
    pub(crate) layout: Layout,
    q_mass: BandedLu<C<T>>,
    mass_lu: BandedLu<C<T>>,
}

/// Builds the semi-discrete operators for frequency `xi` on `mesh`.
pub fn semidiscretize<T: Real>(
    profile: &EquilibriumProfile<T>,
    mesh: &Mesh1D<T>,
    xi: [T; 2],
    params: &PhysicalParams<T>,
) -> Result<Semidiscrete<T>> {
    if !(xi[0].is_finite() && xi[1].is_finite()) {
        return Err(Error::InvalidInput("frequency must be finite".into()));
    }
    let n_nodes = mesh.n_nodes();
    let i0 = mesh.interface_node();
    let layout = Layout::new(n_nodes, i0);
    let k = xi[0].hypot(xi[1]);
    let coefficients = surface_coefficients(profile, params, k);

    let zero = C::new(T::zero(), T::zero());
    let re = |x: T| C::new(x, T::zero());
    let im = |x: T| C::new(T::zero(), x);
    let half = T::of(0.5);
    let two_thirds = T::of(2.0 / 3.0);

    let mut mass = Vec::new();
    let mut op = Vec::new();
    let mut energy = Vec::new();
    let mut visc = Vec::new();
    let mut q_mass = Vec::new();

    for el in mesh.elements() {
        let layer = el.layer;
        let h = el.h();
        let mu = params.mu(layer);
        let mu_p = params.mu_prime(layer);
        let nodes = [el.left, el.left + 1];
        let rows = nodes.map(|i| if layer == Layer::Lower { i } else { i + 1 });
        let slope = [-T::one() / h, T::one() / h];
        for (t, w) in gauss4::<T>() {
            let x = el.x0 + t * h;
            let w = w * h;
            let basis = [T::one() - t, t];
            let rho = profile.density(layer, x);
            let drho = profile.density_slope(layer, x);
            let hp = profile.enthalpy_weight(layer, x)?;

            // density mass
            for a in 0..2 {
                for b in 0..2 {
                    let v = re(w * hp * basis[a] * basis[b]);
                    q_mass.push((rows[a], rows[b], v));
                    mass.push((layout.q[rows[a]], layout.q[rows[b]], v));
                    energy.push((layout.q[rows[a]], layout.q[rows[b]], v));
                }
            }

            // velocity basis: divergence of rho u and the deviatoric strain
            let mut div_flux = [[zero; 3]; 2];
            let mut div = [[zero; 3]; 2];
            let mut strain = [[[[zero; 3]; 3]; 3]; 2];
            for a in 0..2 {
                let n = basis[a];
                let dn = slope[a];
                for c in 0..3 {
                    let mut grad = [zero; 3];
                    grad[0] = im(xi[0] * n);
                    grad[1] = im(xi[1] * n);
                    grad[2] = re(dn);
                    let d = grad[c];
                    div[a][c] = d;
                    div_flux[a][c] = if c == 2 {
                        re(drho * n + rho * dn)
                    } else {
                        grad[c] * rho
                    };
                    let s = &mut strain[a][c];
                    for (l, &gl) in grad.iter().enumerate() {
                        s[c][l] += gl;
                        s[l][c] += gl;
                    }
                    for (l, row) in s.iter_mut().enumerate() {
                        row[l] -= d * two_thirds;
                    }
                }
            }

            for a in 0..2 {
                let Some(ua) = layout.u[nodes[a]] else {
                    continue;
                };
                for ca in 0..3 {
                    let ia = ua[ca];
                    // coupling with density: -B in the continuity rows, B^H in momentum rows
                    for b in 0..2 {
                        let bv = div_flux[a][ca] * (w * hp * basis[b]);
                        op.push((layout.q[rows[b]], ia, -bv));
                        op.push((ia, layout.q[rows[b]], bv.conj()));
                    }
                    for b in 0..2 {
                        let Some(ub) = layout.u[nodes[b]] else {
                            continue;
                        };
                        if ca == 0 {
                            let v = re(w * rho * basis[a] * basis[b]);
                            for c in 0..3 {
                                mass.push((ua[c], ub[c], v));
                                energy.push((ua[c], ub[c], v));
                            }
                        }
                        for cb in 0..3 {
                            let sa = &strain[a][ca];
                            let sb = &strain[b][cb];
                            let mut acc = zero;
                            for l in 0..3 {
                                for m in 0..3 {
                                    acc += sb[l][m] * sa[l][m].conj();
                                }
                            }
                            let v = (acc * (half * mu) + div[b][cb] * div[a][ca].conj() * mu_p) * w;
                            visc.push((ia, ub[cb], v));
                            op.push((ia, ub[cb], -v));
                        }
                    }
                }
            }
        }
    }

    let u_top = layout.u[mesh.top_node()].expect("top node carries velocity")[2];
    let u_int = layout.u[i0].expect("interface node carries velocity")[2];
    for (eta, u3, c) in [
        (layout.eta_plus, u_top, coefficients.top),
        (layout.eta_minus, u_int, coefficients.interface),
    ] {
        mass.push((eta, eta, re(T::one())));
        energy.push((eta, eta, re(c)));
        op.push((u3, eta, re(-c)));
        op.push((eta, u3, re(T::one())));
    }

    let n = layout.len;
    let mass = BandedMatrix::from_triplets(n, &mass);
    let q_mass = BandedMatrix::from_triplets(n_nodes + 1, &q_mass).lu()?;
    let mass_lu = mass.lu()?;
    Ok(Semidiscrete {
        xi,
        coefficients,
        operator: BandedMatrix::from_triplets(n, &op),
        energy: BandedMatrix::from_triplets(n, &energy),
        viscous: BandedMatrix::from_triplets(n, &visc),
        mass,
        layout,
        q_mass,
        mass_lu,
    })
}

impl<T: Real> Semidiscrete<T> {
    pub fn xi_abs(&self) -> T {
        self.xi[0].hypot(self.xi[1])
    }

    /// Length of the global unknown vector.
    pub fn len(&self) -> usize {
        self.layout.len
    }

    pub fn is_empty(&self) -> bool {
        self.layout.len == 0
    }

    pub fn zero_state(&self) -> FrequencyState<T> {
        let z = C::new(T::zero(), T::zero());
        FrequencyState {
            q_hat: vec![z; self.layout.q.len()],
            u_hat: vec![[z; 3]; self.layout.u.len()],
            eta_hat_plus: z,
            eta_hat_minus: z,
            time: T::zero(),
        }
    }

    /// Flattens a state into the global vector. The bottom velocity is
    /// dropped.
    pub fn pack(&self, s: &FrequencyState<T>) -> Result<Vec<C<T>>> {
        let l = &self.layout;
        if s.q_hat.len() != l.q.len() || s.u_hat.len() != l.u.len() {
            return Err(Error::InvalidInput(
                "state does not match the operators".into(),
            ));
        }
        let mut y = vec![C::new(T::zero(), T::zero()); l.len];
        for (&i, &v) in l.q.iter().zip(&s.q_hat) {
            y[i] = v;
        }
        for (idx, v) in l.u.iter().zip(&s.u_hat) {
            if let Some(idx) = idx {
                for c in 0..3 {
                    y[idx[c]] = v[c];
                }
            }
        }
        y[l.eta_plus] = s.eta_hat_plus;
        y[l.eta_minus] = s.eta_hat_minus;
        Ok(y)
    }

    pub fn unpack(&self, y: &[C<T>], time: T) -> FrequencyState<T> {
        let l = &self.layout;
        let z = C::new(T::zero(), T::zero());
        FrequencyState {
            q_hat: l.q.iter().map(|&i| y[i]).collect(),
            u_hat: l
                .u
                .iter()
                .map(|idx| idx.map_or([z; 3], |idx| idx.map(|i| y[i])))
                .collect(),
            eta_hat_plus: y[l.eta_plus],
            eta_hat_minus: y[l.eta_minus],
            time,
        }
    }

    /// `dy/dt = M^{-1} L y`.
    pub fn time_derivative(&self, y: &[C<T>]) -> Vec<C<T>> {
        let mut r = self.operator.matvec(y);
        self.mass_lu.solve_in_place(&mut r);
        r
    }

    /// Total linear energy, including the (possibly negative) interface
    /// gravity term.
    pub fn total_energy(&self, y: &[C<T>]) -> T {
        self.energy.quad_form(y).re * T::of(0.5)
    }

    /// Viscous dissipation rate `a(u, u)`.
    pub fn dissipation(&self, y: &[C<T>]) -> T {
        self.viscous.quad_form(y).re
    }

    /// State of the growing normal mode with profiles `(phi, theta, psi)` on
    /// the mesh nodes and rate `lambda`: velocity `(-i phi, -i theta, psi)`,
    /// density from the discrete continuity equation and amplitudes
    /// `u_3 / lambda`.
    pub fn mode_state(
        &self,
        phi: &[T],
        theta: &[T],
        psi: &[T],
        lambda: T,
    ) -> Result<FrequencyState<T>> {
        let n = self.layout.u.len();
        if phi.len() != n || theta.len() != n || psi.len() != n {
            return Err(Error::InvalidInput(
                "mode profiles do not match the mesh".into(),
            ));
        }
        if !(lambda > T::zero()) {
            return Err(Error::InvalidInput(format!(
                "mode rate must be positive, got {lambda}"
            )));
        }
        let mut s = self.zero_state();
        for i in 1..n {
            s.u_hat[i] = [
                C::new(T::zero(), -phi[i]),
                C::new(T::zero(), -theta[i]),
                C::new(psi[i], T::zero()),
            ];
        }
        let y = self.pack(&s)?;
        let flux = self.operator.matvec(&y);
        let mut q: Vec<C<T>> = self.layout.q.iter().map(|&i| flux[i]).collect();
        self.q_mass.solve_in_place(&mut q);
        let inv = T::one() / lambda;
        s.q_hat = q.into_iter().map(|v| v * inv).collect();
        s.eta_hat_plus = s.u_hat[n - 1][2] * inv;
        s.eta_hat_minus = s.u_hat[self.interface_node()][2] * inv;
        Ok(s)
    }

    fn interface_node(&self) -> usize {
        self.layout.interface
    }
}
