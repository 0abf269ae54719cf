//! Growth rates from the fixed point `s = sqrt(-alpha(s))`, lattice sweeps
//! and critical parameters.

mod lattice;
pub(crate) mod probe;

use rayon::prelude::*;
use serde::Serialize;

use crate::equilibrium::{EquilibriumProfile, PhysicalParams};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::variational::{assemble_forms, min_eig_with, EigenOptions, Mesh1D, QuadraticForms};

pub use lattice::{lattice_shells, LatticeShell};
pub use probe::{negativity_probe, probe_norm_squared, probe_profile, ProbeValue};

/// Root-finding and eigensolver settings.
#[derive(Clone, Copy, Debug)]
pub struct SolverOptions<T> {
    pub eigen: EigenOptions<T>,
    /// Relative tolerance on `|f|` (scaled by `S_max^2`) and on the bracket
    /// width (scaled by `S_max`).
    pub root_tol: T,
    /// Upper end of the bracket as a multiple of the growth bound.
    pub s_max_factor: T,
    pub max_bisections: usize,
}

impl<T: Real> Default for SolverOptions<T> {
    fn default() -> Self {
        Self {
            eigen: EigenOptions::default(),
            root_tol: T::of(1e-10),
            s_max_factor: T::of(1.25),
            max_bisections: 200,
        }
    }
}

/// Growth rate at one frequency.
#[derive(Clone, Debug, Serialize)]
pub struct DispersionPoint<T> {
    pub xi: [T; 2],
    pub xi_abs: T,
    pub lambda: T,
    pub alpha_at_star: T,
    pub minimizer: Vec<T>,
    pub iterations: usize,
    pub converged: bool,
}

/// Result of a lattice sweep.
#[derive(Clone, Debug)]
pub struct GrowthSummary<T> {
    /// Largest growth rate found.
    pub lambda_max: T,
    /// Reported rate; satisfies `lambda_max / 2 < lambda_star <= lambda_max`
    /// whenever `lambda_max > 0`.
    pub lambda_star: T,
    pub argmax_xi: Option<[T; 2]>,
    pub attained: bool,
    pub star_within_half: bool,
    pub sigma_c: T,
    /// `None` stands for an unbounded critical frequency; zero when the
    /// density jump is not positive.
    pub xi_c: Option<T>,
    pub curve: Vec<DispersionPoint<T>>,
}

/// `jump * g * max(L1^2, L2^2)`.
pub fn critical_tension<T: Real>(profile: &EquilibriumProfile<T>, params: &PhysicalParams<T>) -> T {
    let l = params.l1.max(params.l2);
    profile.jump * profile.gravity() * l * l
}

/// `sqrt(jump g / sigma_-)`, infinite when `sigma_- = 0`.
pub fn critical_frequency<T: Real>(
    profile: &EquilibriumProfile<T>,
    params: &PhysicalParams<T>,
) -> Result<T> {
    if !(profile.jump > T::zero()) {
        return Err(Error::NotUnstableOrientation {
            jump: profile.jump.f64(),
        });
    }
    if params.sigma_minus == T::zero() {
        return Ok(T::infinity());
    }
    Ok((profile.jump * profile.gravity() / params.sigma_minus).sqrt())
}

/// Upper bound `b g jump / mu_-` on any growth rate.
pub fn growth_bound<T: Real>(profile: &EquilibriumProfile<T>, params: &PhysicalParams<T>) -> T {
    params.b * profile.gravity() * profile.jump / params.mu_minus
}

/// `alpha(s)` at `|xi|` on the given mesh.
pub fn alpha<T: Real>(
    profile: &EquilibriumProfile<T>,
    mesh: &Mesh1D<T>,
    params: &PhysicalParams<T>,
    xi_abs: T,
    s: T,
    opts: &EigenOptions<T>,
) -> Result<T> {
    let forms = assemble_forms(mesh, profile, xi_abs, params);
    Ok(min_eig_with(&forms, s, opts, None)?.0)
}

/// Growth rate at `|xi|`, reported at the frequency `(|xi|, 0)`.
pub fn growth_rate<T: Real>(
    profile: &EquilibriumProfile<T>,
    xi_abs: T,
    mesh: &Mesh1D<T>,
    params: &PhysicalParams<T>,
    opts: &SolverOptions<T>,
) -> Result<DispersionPoint<T>> {
    growth_rate_at(profile, [xi_abs, T::zero()], mesh, params, opts)
}

/// Growth rate at a frequency vector; the solve depends on `|xi|` only.
pub fn growth_rate_at<T: Real>(
    profile: &EquilibriumProfile<T>,
    xi: [T; 2],
    mesh: &Mesh1D<T>,
    params: &PhysicalParams<T>,
    opts: &SolverOptions<T>,
) -> Result<DispersionPoint<T>> {
    let xi_abs = xi[0].hypot(xi[1]);
    if !(xi_abs > T::zero()) || !xi_abs.is_finite() {
        return Err(Error::InvalidInput(format!(
            "|xi| = {xi_abs} must be positive"
        )));
    }
    let forms = assemble_forms(mesh, profile, xi_abs, params);
    let g = profile.gravity();
    let bound = growth_bound(profile, params);
    let s_max = opts.s_max_factor * bound;
    let stable_orientation =
        !(profile.jump > T::zero()) || params.sigma_minus * xi_abs * xi_abs >= profile.jump * g;
    // with no instability the bracket is meaningless; probe at a small s
    let s_min = if s_max > T::zero() {
        T::of(1e-8) * s_max
    } else {
        T::of(1e-8)
    };
    let at = |s: T, start: Option<&[T]>| min_eig_with(&forms, s, &opts.eigen, start);
    let (a_min, v_min) = at(s_min, None)?;
    let stable = |alpha: T, v: Vec<T>| DispersionPoint {
        xi,
        xi_abs,
        lambda: T::zero(),
        alpha_at_star: alpha,
        minimizer: v,
        iterations: 0,
        converged: true,
    };
    if stable_orientation || a_min >= T::zero() {
        return Ok(stable(a_min, v_min));
    }
    bisect(&forms, xi, s_min, s_max, a_min, v_min, opts)
}

fn bisect<T: Real>(
    forms: &QuadraticForms<T>,
    xi: [T; 2],
    s_min: T,
    s_max: T,
    a_min: T,
    v_min: Vec<T>,
    opts: &SolverOptions<T>,
) -> Result<DispersionPoint<T>> {
    let xi_abs = forms.xi_abs;
    let f_lo = s_min * s_min + a_min;
    let (a_hi, _) = min_eig_with(forms, s_max, &opts.eigen, Some(&v_min))?;
    let f_hi = s_max * s_max + a_hi;
    if f_lo >= T::zero() || f_hi <= T::zero() {
        return Err(Error::NoSignChange {
            xi_abs: xi_abs.f64(),
            f_lo: f_lo.f64(),
            f_hi: f_hi.f64(),
        });
    }
    let f_tol = opts.root_tol * s_max * s_max;
    let w_tol = opts.root_tol * s_max;
    let (mut lo, mut hi) = (s_min, s_max);
    let mut v = v_min;
    let mut best = (s_min, a_min, v.clone());
    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_bisections {
        iterations += 1;
        let mid = lo + T::of(0.5) * (hi - lo);
        let (a, vm) = min_eig_with(forms, mid, &opts.eigen, Some(&v))?;
        let f = mid * mid + a;
        v = vm;
        best = (mid, a, v.clone());
        if f.abs() <= f_tol || hi - lo <= w_tol {
            converged = true;
            break;
        }
        if f < T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (lambda, alpha_at_star, minimizer) = best;
    Ok(DispersionPoint {
        xi,
        xi_abs,
        lambda,
        alpha_at_star,
        minimizer,
        iterations,
        converged,
    })
}

/// Sweeps the lattice `L1^-1 Z x L2^-1 Z` over `0 < |xi| < min(|xi|_c, cutoff)`,
/// solving once per distinct `|xi|`.
pub fn sweep_lattice<T: Real>(
    profile: &EquilibriumProfile<T>,
    mesh: &Mesh1D<T>,
    params: &PhysicalParams<T>,
    cutoff: Option<T>,
    opts: &SolverOptions<T>,
) -> Result<GrowthSummary<T>> {
    let sigma_c = critical_tension(profile, params);
    let xi_c = if profile.jump > T::zero() {
        critical_frequency(profile, params)?
    } else {
        T::zero()
    };
    if params.sigma_minus == T::zero() && cutoff.is_none() && profile.jump > T::zero() {
        return Err(Error::InvalidInput(
            "a finite frequency cutoff is required when sigma_minus = 0".into(),
        ));
    }
    let upper = match cutoff {
        Some(c) => c.min(xi_c),
        None => xi_c,
    };
    let shells = lattice_shells(params.l1, params.l2, upper)?;
    let curve = shells
        .par_iter()
        .map(|sh| growth_rate_at(profile, sh.xi, mesh, params, opts))
        .collect::<Result<Vec<_>>>()?;

    let mut lambda_max = T::zero();
    let mut argmax = None;
    for p in &curve {
        if p.lambda > lambda_max {
            lambda_max = p.lambda;
            argmax = Some(p.xi);
        }
    }
    let finite_xi_c = xi_c.is_finite().then_some(xi_c);
    Ok(GrowthSummary {
        lambda_max,
        lambda_star: lambda_max,
        argmax_xi: argmax,
        attained: params.sigma_minus > T::zero(),
        star_within_half: lambda_max > T::zero(),
        sigma_c,
        xi_c: if profile.jump > T::zero() {
            finite_xi_c
        } else {
            Some(T::zero())
        },
        curve,
    })
}
