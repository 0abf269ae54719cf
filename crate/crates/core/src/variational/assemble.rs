use crate::equilibrium::{EquilibriumProfile, Layer, PhysicalParams};
use crate::linalg::BandedMatrix;
use crate::quadrature::gauss4;
use crate::scalar::Real;

use super::mesh::{Element, Mesh1D};

/// Quadratic forms of the reduced energy: `v^T K0 v = E0`, `v^T K1 v = E1`,
/// `v^T M v = J`, with the factor one half already included.
#[derive(Clone, Debug)]
pub struct QuadraticForms<T> {
    pub k0: BandedMatrix<T>,
    pub k1: BandedMatrix<T>,
    pub m: BandedMatrix<T>,
    pub xi_abs: T,
    /// Unknown functions per node (2 for `(phi, psi)`, 3 with `theta`).
    pub fields: usize,
    /// Index of the vertical component at the interface node.
    pub interface_dof: usize,
    /// Cheap lower bound on the smallest pencil eigenvalue, `-g |xi|`.
    pub lower_bound: T,
}

impl<T: Real> QuadraticForms<T> {
    pub fn dof_count(&self) -> usize {
        self.m.n()
    }

    /// `K0 + s K1`.
    pub fn energy_matrix(&self, s: T) -> BandedMatrix<T> {
        self.k0.combine(T::one(), &self.k1, s)
    }
}

/// Coefficients of the squared interface amplitudes in the potential energy
/// (twice the point-mass weights).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceCoefficients<T> {
    /// `sigma_+ |xi|^2 + rho_1 g` at the free surface
    pub top: T,
    /// `sigma_- |xi|^2 - jump g` at the internal interface
    pub interface: T,
}

pub fn surface_coefficients<T: Real>(
    profile: &EquilibriumProfile<T>,
    params: &PhysicalParams<T>,
    xi_abs: T,
) -> SurfaceCoefficients<T> {
    let k2 = xi_abs * xi_abs;
    let g = profile.gravity();
    SurfaceCoefficients {
        top: params.sigma_plus * k2 + profile.rho1 * g,
        interface: params.sigma_minus * k2 - profile.jump * g,
    }
}

/// Data at one quadrature point of one element.
pub(crate) struct QuadPoint<T> {
    pub x: T,
    pub weight: T,
    pub layer: Layer,
    basis: [T; 2],
    slope: [T; 2],
    fields: usize,
}

impl<T: Real> QuadPoint<T> {
    /// Local functional returning the value of `field`.
    pub fn value(&self, field: usize) -> Vec<T> {
        let mut w = vec![T::zero(); 2 * self.fields];
        w[field] = self.basis[0];
        w[self.fields + field] = self.basis[1];
        w
    }

    /// Local functional returning the derivative of `field`.
    pub fn deriv(&self, field: usize) -> Vec<T> {
        let mut w = vec![T::zero(); 2 * self.fields];
        w[field] = self.slope[0];
        w[self.fields + field] = self.slope[1];
        w
    }
}

/// `sum_i c_i f_i` for local functionals.
pub(crate) fn combo<T: Real>(terms: &[(T, &[T])]) -> Vec<T> {
    let mut out = vec![T::zero(); terms[0].1.len()];
    for &(c, f) in terms {
        for (o, &x) in out.iter_mut().zip(f) {
            *o += c * x;
        }
    }
    out
}

/// Local element matrix accumulated from quadratic integrands.
pub(crate) struct Local<T> {
    n: usize,
    a: Vec<T>,
}

impl<T: Real> Local<T> {
    fn new(n: usize) -> Self {
        Self {
            n,
            a: vec![T::zero(); n * n],
        }
    }

    /// Adds `coef * (w . v)^2`.
    pub fn square(&mut self, coef: T, w: &[T]) {
        for i in 0..self.n {
            let ci = coef * w[i];
            for j in i..self.n {
                self.a[i * self.n + j] += ci * w[j];
            }
        }
    }

    /// Adds `coef * (a . v)(b . v)`.
    pub fn product(&mut self, coef: T, a: &[T], b: &[T]) {
        let half = T::of(0.5) * coef;
        for i in 0..self.n {
            for j in i..self.n {
                self.a[i * self.n + j] += half * (a[i] * b[j] + b[i] * a[j]);
            }
        }
    }
}

/// Assembles `sum_elements sum_qp integrand` into a banded symmetric matrix.
pub(crate) fn assemble<T: Real>(
    mesh: &Mesh1D<T>,
    fields: usize,
    mut integrand: impl FnMut(&Element<T>, &QuadPoint<T>, &mut Local<T>),
) -> BandedMatrix<T> {
    let n = mesh.dof_count_for(fields);
    let bw = 2 * fields - 1;
    let mut out = BandedMatrix::zeros(n, bw, bw);
    let rule = gauss4::<T>();
    let nl = 2 * fields;
    for el in mesh.elements() {
        let h = el.h();
        let mut local = Local::new(nl);
        for &(t, w) in &rule {
            let qp = QuadPoint {
                x: el.x0 + t * h,
                weight: w * h,
                layer: el.layer,
                basis: [T::one() - t, t],
                slope: [-T::one() / h, T::one() / h],
                fields,
            };
            integrand(&el, &qp, &mut local);
        }
        let global = |l: usize| mesh.dof(el.left + l / fields, l % fields, fields);
        for i in 0..nl {
            let Some(gi) = global(i) else { continue };
            for j in i..nl {
                let Some(gj) = global(j) else { continue };
                let v = local.a[i * nl + j];
                out.add(gi, gj, v);
                if gi != gj {
                    out.add(gj, gi, v);
                }
            }
        }
    }
    out
}

struct Coefficients<T> {
    rho: T,
    drho: T,
    h_prime: T,
    dp: T,
    mu: T,
    mu_prime: T,
}

fn coefficients<T: Real>(
    profile: &EquilibriumProfile<T>,
    params: &PhysicalParams<T>,
    layer: Layer,
    x: T,
) -> Coefficients<T> {
    let law = profile.law(layer);
    let rho = profile.density(layer, x);
    let dp = law.dpressure(rho);
    Coefficients {
        rho,
        drho: -profile.gravity() * rho / dp,
        h_prime: dp / rho,
        dp,
        mu: params.mu(layer),
        mu_prime: params.mu_prime(layer),
    }
}

fn add_point_terms<T: Real>(
    k0: &mut BandedMatrix<T>,
    mesh: &Mesh1D<T>,
    fields: usize,
    vertical: usize,
    c: SurfaceCoefficients<T>,
) {
    let half = T::of(0.5);
    let i0 = mesh.dof(mesh.interface_node(), vertical, fields).unwrap();
    let it = mesh.dof(mesh.top_node(), vertical, fields).unwrap();
    k0.add(i0, i0, half * c.interface);
    k0.add(it, it, half * c.top);
}

/// Assembles `E0`, `E1` and `J` for the `(phi, psi)` pair at frequency `|xi|`.
pub fn assemble_forms<T: Real>(
    mesh: &Mesh1D<T>,
    profile: &EquilibriumProfile<T>,
    xi_abs: T,
    params: &PhysicalParams<T>,
) -> QuadraticForms<T> {
    let k = xi_abs;
    let half = T::of(0.5);
    let third = T::one() / T::of(3.0);

    let mut k0 = assemble(mesh, 2, |_, qp, loc| {
        let c = coefficients(profile, params, qp.layer, qp.x);
        let (phi, psi, dpsi) = (qp.value(0), qp.value(1), qp.deriv(1));
        // (rho psi)' + rho k phi
        let w = combo(&[(c.drho, &psi), (c.rho, &dpsi), (c.rho * k, &phi)]);
        loc.square(half * qp.weight * c.h_prime, &w);
    });
    add_point_terms(
        &mut k0,
        mesh,
        2,
        1,
        surface_coefficients(profile, params, k),
    );

    let k1 = assemble(mesh, 2, |_, qp, loc| {
        let c = coefficients(profile, params, qp.layer, qp.x);
        let (phi, psi, dphi, dpsi) = (qp.value(0), qp.value(1), qp.deriv(0), qp.deriv(1));
        let shear_a = combo(&[(T::one(), &dphi), (-k, &psi)]);
        let shear_b = combo(&[(T::one(), &dpsi), (-k, &phi)]);
        let dil = combo(&[(T::one(), &dpsi), (k, &phi)]);
        let wq = half * qp.weight;
        loc.square(wq * c.mu, &shear_a);
        loc.square(wq * c.mu, &shear_b);
        loc.square(wq * (c.mu * third + c.mu_prime), &dil);
    });

    let m = mass(mesh, profile, params, 2);
    let interface_dof = mesh.dof(mesh.interface_node(), 1, 2).unwrap();
    QuadraticForms {
        k0,
        k1,
        m,
        xi_abs,
        fields: 2,
        interface_dof,
        lower_bound: -profile.gravity() * xi_abs,
    }
}

fn mass<T: Real>(
    mesh: &Mesh1D<T>,
    profile: &EquilibriumProfile<T>,
    params: &PhysicalParams<T>,
    fields: usize,
) -> BandedMatrix<T> {
    let half = T::of(0.5);
    assemble(mesh, fields, |_, qp, loc| {
        let c = coefficients(profile, params, qp.layer, qp.x);
        for f in 0..fields {
            loc.square(half * qp.weight * c.rho, &qp.value(f));
        }
    })
}

/// Potential energy written without the gravity boundary terms: the bulk
/// integrand `P'(rho) rho (psi' + k phi)^2 - 2 g rho k psi phi` (halved) plus
/// the surface-tension point terms.
pub fn assemble_forms_alt<T: Real>(
    mesh: &Mesh1D<T>,
    profile: &EquilibriumProfile<T>,
    xi_abs: T,
    params: &PhysicalParams<T>,
) -> BandedMatrix<T> {
    let k = xi_abs;
    let half = T::of(0.5);
    let g = profile.gravity();
    let mut k0 = assemble(mesh, 2, |_, qp, loc| {
        let c = coefficients(profile, params, qp.layer, qp.x);
        let (phi, psi, dpsi) = (qp.value(0), qp.value(1), qp.deriv(1));
        let dil = combo(&[(T::one(), &dpsi), (k, &phi)]);
        loc.square(half * qp.weight * c.dp * c.rho, &dil);
        loc.product(-qp.weight * g * c.rho * k, &psi, &phi);
    });
    let k2 = k * k;
    add_point_terms(
        &mut k0,
        mesh,
        2,
        1,
        SurfaceCoefficients {
            top: params.sigma_plus * k2,
            interface: params.sigma_minus * k2,
        },
    );
    k0
}

/// Forms for the full `(phi, theta, psi)` system at a general frequency
/// `xi = (xi1, xi2)`, from the complex amplitude `(-i phi, -i theta, psi)`.
pub fn assemble_forms_3field<T: Real>(
    mesh: &Mesh1D<T>,
    profile: &EquilibriumProfile<T>,
    xi: [T; 2],
    params: &PhysicalParams<T>,
) -> QuadraticForms<T> {
    let [x1, x2] = xi;
    let xi_abs = x1.hypot(x2);
    let half = T::of(0.5);
    let two = T::of(2.0);
    let four_thirds = T::of(4.0) / T::of(3.0);

    let mut k0 = assemble(mesh, 3, |_, qp, loc| {
        let c = coefficients(profile, params, qp.layer, qp.x);
        let (phi, theta, psi, dpsi) = (qp.value(0), qp.value(1), qp.value(2), qp.deriv(2));
        let w = combo(&[
            (c.drho, &psi),
            (c.rho, &dpsi),
            (c.rho * x1, &phi),
            (c.rho * x2, &theta),
        ]);
        loc.square(half * qp.weight * c.h_prime, &w);
    });
    add_point_terms(
        &mut k0,
        mesh,
        3,
        2,
        surface_coefficients(profile, params, xi_abs),
    );

    let k1 = assemble(mesh, 3, |_, qp, loc| {
        let c = coefficients(profile, params, qp.layer, qp.x);
        let (phi, theta, psi) = (qp.value(0), qp.value(1), qp.value(2));
        let (dphi, dtheta, dpsi) = (qp.deriv(0), qp.deriv(1), qp.deriv(2));
        let d11 = combo(&[(two * x1, &phi)]);
        let d22 = combo(&[(two * x2, &theta)]);
        let d33 = combo(&[(two, &dpsi)]);
        let d12 = combo(&[(x2, &phi), (x1, &theta)]);
        let d13 = combo(&[(T::one(), &dphi), (-x1, &psi)]);
        let d23 = combo(&[(T::one(), &dtheta), (-x2, &psi)]);
        let div = combo(&[(x1, &phi), (x2, &theta), (T::one(), &dpsi)]);
        // E1 = 1/2 int mu/2 |D0|^2 + mu' div^2, |D0|^2 = |D|^2 - 4/3 div^2
        let wq = half * qp.weight;
        let shear = wq * half * c.mu;
        for d in [&d11, &d22, &d33] {
            loc.square(shear, d);
        }
        for d in [&d12, &d13, &d23] {
            loc.square(two * shear, d);
        }
        loc.square(wq * (c.mu_prime - half * c.mu * four_thirds), &div);
    });

    let m = mass(mesh, profile, params, 3);
    QuadraticForms {
        k0,
        k1,
        m,
        xi_abs,
        fields: 3,
        interface_dof: mesh.dof(mesh.interface_node(), 2, 3).unwrap(),
        lower_bound: -profile.gravity() * xi_abs,
    }
}
