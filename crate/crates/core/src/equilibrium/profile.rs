use crate::error::{Error, Result};
use crate::scalar::Real;

use super::{Layer, PhysicalParams, PressureLaw};

/// Exact hydrostatic density for laws with an elementary solution.
#[derive(Clone, Copy, Debug, PartialEq)]
enum ClosedForm<T> {
    /// `rho = rho_ref exp(-g (x - x_ref) / K)`
    Exponential { rho_ref: T, x_ref: T, rate: T },
    /// `rho^(gamma-1) = rho_ref^(gamma-1) - (gamma-1) g (x - x_ref) / (K gamma)`
    Power {
        rho_ref: T,
        x_ref: T,
        gm1: T,
        slope: T,
    },
}

impl<T: Real> ClosedForm<T> {
    fn for_law(law: &PressureLaw<T>, g: T, rho_ref: T, x_ref: T) -> Option<Self> {
        match *law {
            PressureLaw::Isothermal { k } => Some(Self::Exponential {
                rho_ref,
                x_ref,
                rate: g / k,
            }),
            PressureLaw::Polytropic { k, gamma } if gamma == T::one() => Some(Self::Exponential {
                rho_ref,
                x_ref,
                rate: g / k,
            }),
            PressureLaw::Polytropic { k, gamma } => {
                let gm1 = gamma - T::one();
                Some(Self::Power {
                    rho_ref,
                    x_ref,
                    gm1,
                    slope: gm1 * g / (k * gamma),
                })
            }
            PressureLaw::Tabulated(_) => None,
        }
    }

    fn density(&self, x: T) -> T {
        match *self {
            Self::Exponential {
                rho_ref,
                x_ref,
                rate,
            } => rho_ref * (-rate * (x - x_ref)).exp(),
            Self::Power {
                rho_ref,
                x_ref,
                gm1,
                slope,
            } => (rho_ref.powf(gm1) - slope * (x - x_ref)).powf(T::one() / gm1),
        }
    }
}

/// Samples of one layer's density on a uniform grid, ascending in `x3`.
#[derive(Clone, Debug)]
pub struct LayerSamples<T> {
    pub(crate) x: Vec<T>,
    pub(crate) rho: Vec<T>,
    pub(crate) drho: Vec<T>,
    closed: Option<ClosedForm<T>>,
}

impl<T: Real> LayerSamples<T> {
    pub fn coordinates(&self) -> &[T] {
        &self.x
    }

    pub fn densities(&self) -> &[T] {
        &self.rho
    }

    fn lo(&self) -> T {
        self.x[0]
    }

    fn hi(&self) -> T {
        self.x[self.x.len() - 1]
    }

    /// Cubic Hermite interpolation through the samples and the ODE slopes.
    fn interpolate(&self, x: T) -> T {
        let n = self.x.len();
        let h = (self.hi() - self.lo()) / T::of_usize(n - 1);
        let pos = ((x - self.lo()) / h).floor();
        let i = pos.to_usize().unwrap_or(0).min(n - 2);
        let t = (x - self.x[i]) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let two = T::of(2.0);
        let three = T::of(3.0);
        (two * t3 - three * t2 + T::one()) * self.rho[i]
            + (t3 - two * t2 + t) * h * self.drho[i]
            + (three * t2 - two * t3) * self.rho[i + 1]
            + (t3 - t2) * h * self.drho[i + 1]
    }
}

/// Two-layer hydrostatic equilibrium density.
#[derive(Clone, Debug)]
pub struct EquilibriumProfile<T> {
    pub(crate) law_plus: PressureLaw<T>,
    pub(crate) law_minus: PressureLaw<T>,
    pub(crate) g: T,
    pub(crate) p_atm: T,
    pub(crate) b: T,
    pub(crate) ell: T,
    pub(crate) upper: LayerSamples<T>,
    pub(crate) lower: LayerSamples<T>,
    /// `rho_+(ell)`
    pub rho1: T,
    /// `rho_+(0)`
    pub rho_top_interface: T,
    /// `rho_-(0)`
    pub rho_bot_interface: T,
    /// `rho_+(0) - rho_-(0)`
    pub jump: T,
}

/// Integrates the hydrostatic balance `d P(rho) / dx3 = -g rho` in each layer.
///
/// The upper layer is integrated downward from `P_+(rho(ell)) = p_atm`; the
/// lower layer starts from pressure continuity at the interface. Each layer
/// gets `n_samples` points (classical RK4, fixed step).
pub fn solve_equilibrium<T: Real>(
    plus: &PressureLaw<T>,
    minus: &PressureLaw<T>,
    params: &PhysicalParams<T>,
    n_samples: usize,
) -> Result<EquilibriumProfile<T>> {
    plus.validate()?;
    minus.validate()?;
    params.validate()?;
    if n_samples < 3 {
        return Err(Error::InvalidInput(format!(
            "n_samples = {n_samples} must be at least 3"
        )));
    }
    let g = params.g;
    let rho1 = plus.inverse(params.p_atm)?;
    let upper = integrate_layer(plus, g, params.ell, T::zero(), rho1, n_samples)?;
    let rho_top = upper.rho[0];
    let rho_bot = minus.inverse(plus.pressure(rho_top))?;
    let lower = integrate_layer(minus, g, T::zero(), -params.b, rho_bot, n_samples)?;

    Ok(EquilibriumProfile {
        law_plus: plus.clone(),
        law_minus: minus.clone(),
        g,
        p_atm: params.p_atm,
        b: params.b,
        ell: params.ell,
        upper,
        lower,
        rho1,
        rho_top_interface: rho_top,
        rho_bot_interface: rho_bot,
        jump: rho_top - rho_bot,
    })
}

fn hydrostatic_slope<T: Real>(law: &PressureLaw<T>, g: T, x: T, rho: T) -> Result<T> {
    if !(rho > T::zero()) {
        return Err(Error::NonPositiveDensity {
            x3: x.f64(),
            rho: rho.f64(),
        });
    }
    let dp = law.dpressure(rho);
    let floor = T::epsilon() * (T::one() + (law.pressure(rho) / rho).abs());
    if !(dp > floor) || !dp.is_finite() {
        return Err(Error::DegeneratePressure {
            x3: x.f64(),
            rho: rho.f64(),
            dp: dp.f64(),
        });
    }
    Ok(-g * rho / dp)
}

/// RK4 from `x_start` (where `rho = rho_start`) to `x_end`; samples are
/// returned in ascending `x3`.
fn integrate_layer<T: Real>(
    law: &PressureLaw<T>,
    g: T,
    x_start: T,
    x_end: T,
    rho_start: T,
    n: usize,
) -> Result<LayerSamples<T>> {
    let h = (x_end - x_start) / T::of_usize(n - 1);
    let half = T::of(0.5);
    let sixth = T::one() / T::of(6.0);
    let f = |x: T, r: T| hydrostatic_slope(law, g, x, r);

    let mut xs = Vec::with_capacity(n);
    let mut rho = Vec::with_capacity(n);
    let mut drho = Vec::with_capacity(n);
    let mut r = rho_start;
    for i in 0..n {
        let x = x_start + h * T::of_usize(i);
        let k1 = f(x, r)?;
        xs.push(x);
        rho.push(r);
        drho.push(k1);
        if i + 1 == n {
            break;
        }
        let k2 = f(x + half * h, r + half * h * k1)?;
        let k3 = f(x + half * h, r + half * h * k2)?;
        let k4 = f(x + h, r + h * k3)?;
        r += h * sixth * (k1 + T::of(2.0) * k2 + T::of(2.0) * k3 + k4);
        if !(r > T::zero()) {
            return Err(Error::NonPositiveDensity {
                x3: (x + h).f64(),
                rho: r.f64(),
            });
        }
    }
    // keep the exact endpoint coordinate
    xs[n - 1] = x_end;
    xs.reverse();
    rho.reverse();
    drho.reverse();
    let closed = ClosedForm::for_law(law, g, rho_start, x_start);
    Ok(LayerSamples {
        x: xs,
        rho,
        drho,
        closed,
    })
}

impl<T: Real> EquilibriumProfile<T> {
    pub fn law(&self, layer: Layer) -> &PressureLaw<T> {
        match layer {
            Layer::Upper => &self.law_plus,
            Layer::Lower => &self.law_minus,
        }
    }

    pub fn samples(&self, layer: Layer) -> &LayerSamples<T> {
        match layer {
            Layer::Upper => &self.upper,
            Layer::Lower => &self.lower,
        }
    }

    pub fn gravity(&self) -> T {
        self.g
    }

    pub fn depths(&self) -> (T, T) {
        (self.b, self.ell)
    }

    pub fn atmospheric_pressure(&self) -> T {
        self.p_atm
    }

    fn check_domain(&self, layer: Layer, x3: T) -> Result<()> {
        let (lo, hi) = match layer {
            Layer::Upper => (T::zero(), self.ell),
            Layer::Lower => (-self.b, T::zero()),
        };
        let slack = T::of(1e-12) * (self.b + self.ell);
        if x3 < lo - slack || x3 > hi + slack || !x3.is_finite() {
            return Err(Error::Domain {
                x3: x3.f64(),
                lo: lo.f64(),
                hi: hi.f64(),
            });
        }
        Ok(())
    }

    /// Density in `layer` at `x3`. Uses the closed-form solution when the law
    /// admits one and Hermite interpolation of the RK4 samples otherwise.
    pub fn density(&self, layer: Layer, x3: T) -> T {
        let s = self.samples(layer);
        match &s.closed {
            Some(c) => c.density(x3),
            None => s.interpolate(x3),
        }
    }

    /// Density from the integrator samples only, bypassing any closed form.
    pub fn sampled_density(&self, layer: Layer, x3: T) -> T {
        self.samples(layer).interpolate(x3)
    }

    /// `d rho / d x3 = -g rho / P'(rho)`.
    pub fn density_slope(&self, layer: Layer, x3: T) -> T {
        let rho = self.density(layer, x3);
        -self.g * rho / self.law(layer).dpressure(rho)
    }

    /// Second derivative of the density, from differentiating the hydrostatic ODE.
    pub fn density_curvature(&self, layer: Layer, x3: T) -> T {
        let law = self.law(layer);
        let rho = self.density(layer, x3);
        let dp = law.dpressure(rho);
        let drho = -self.g * rho / dp;
        -self.g * drho * (dp - rho * law.d2pressure(rho)) / (dp * dp)
    }

    /// `h'(rho(x3)) = P'(rho) / rho` with a domain check.
    pub fn enthalpy_weight(&self, layer: Layer, x3: T) -> Result<T> {
        self.check_domain(layer, x3)?;
        Ok(self.law(layer).enthalpy_weight(self.density(layer, x3)))
    }

    /// Equilibrium pressure `P(rho(x3))`.
    pub fn pressure(&self, layer: Layer, x3: T) -> T {
        self.law(layer).pressure(self.density(layer, x3))
    }

    /// Density with a domain check; `x3 = 0` reads the upper trace.
    pub fn density_at(&self, x3: T) -> Result<T> {
        let layer = Layer::of(x3);
        self.check_domain(layer, x3)?;
        Ok(self.density(layer, x3))
    }
}

#[cfg(test)]
impl EquilibriumProfile<f64> {
    /// Constant density in both layers with the given gravity (possibly zero),
    /// bypassing the hydrostatic solve.
    pub(crate) fn uniform(rho: f64, k: f64, g: f64, b: f64, ell: f64) -> Self {
        let layer = |lo: f64, hi: f64| LayerSamples {
            x: vec![lo, 0.5 * (lo + hi), hi],
            rho: vec![rho; 3],
            drho: vec![0.0; 3],
            closed: None,
        };
        Self {
            law_plus: PressureLaw::isothermal(k),
            law_minus: PressureLaw::isothermal(k),
            g,
            p_atm: k * rho,
            b,
            ell,
            upper: layer(0.0, ell),
            lower: layer(-b, 0.0),
            rho1: rho,
            rho_top_interface: rho,
            rho_bot_interface: rho,
            jump: 0.0,
        }
    }
}

/// `rho^+ - rho^-` across the internal interface.
pub fn density_jump<T: Real>(profile: &EquilibriumProfile<T>) -> T {
    profile.rho_top_interface - profile.rho_bot_interface
}

/// Problems found by [`check_admissibility`].
#[derive(Clone, Debug, PartialEq)]
pub enum AdmissibilityFlag {
    NonPositiveDensity { layer: Layer, x3: f64, rho: f64 },
    DegeneratePressure { layer: Layer, x3: f64, dp: f64 },
    HydrostaticResidual { layer: Layer, residual: f64 },
    PressureContinuity { residual: f64 },
    TopPressure { residual: f64 },
}

/// Numeric admissibility check of an equilibrium profile.
#[derive(Clone, Debug)]
pub struct AdmissibilityReport<T> {
    pub min_density: T,
    pub min_density_at: T,
    pub min_dpressure: T,
    /// Largest `|dP(rho)/dx3 + g rho|` over sample triples, evaluated with
    /// Simpson's rule so it converges at the integrator's order.
    pub max_hydrostatic_residual: T,
    pub interface_pressure_residual: T,
    pub top_pressure_residual: T,
    pub flags: Vec<AdmissibilityFlag>,
}

impl<T: Real> AdmissibilityReport<T> {
    pub fn passed(&self) -> bool {
        self.flags.is_empty()
    }
}

/// Relative tolerances used by [`check_admissibility`].
#[derive(Clone, Copy, Debug)]
pub struct AdmissibilityTolerances<T> {
    pub hydrostatic: T,
    pub pressure: T,
}

impl<T: Real> Default for AdmissibilityTolerances<T> {
    fn default() -> Self {
        Self {
            hydrostatic: T::of(1e-8),
            pressure: T::of(1e-10),
        }
    }
}

pub fn check_admissibility<T: Real>(profile: &EquilibriumProfile<T>) -> AdmissibilityReport<T> {
    check_admissibility_with(profile, AdmissibilityTolerances::default())
}

pub fn check_admissibility_with<T: Real>(
    profile: &EquilibriumProfile<T>,
    tol: AdmissibilityTolerances<T>,
) -> AdmissibilityReport<T> {
    let mut flags = Vec::new();
    let mut min_density = T::infinity();
    let mut min_density_at = T::zero();
    let mut min_dp = T::infinity();
    let mut max_res = T::zero();
    let g = profile.g;

    for layer in [Layer::Lower, Layer::Upper] {
        let s = profile.samples(layer);
        let law = profile.law(layer);
        let mut layer_res = T::zero();
        let mut rho_scale = T::zero();
        for (&x, &r) in s.x.iter().zip(&s.rho) {
            rho_scale = rho_scale.max(r.abs());
            if r < min_density {
                min_density = r;
                min_density_at = x;
            }
            if !(r > T::zero()) {
                flags.push(AdmissibilityFlag::NonPositiveDensity {
                    layer,
                    x3: x.f64(),
                    rho: r.f64(),
                });
            }
            let dp = law.dpressure(r);
            min_dp = min_dp.min(dp);
            if !(dp > T::zero()) {
                flags.push(AdmissibilityFlag::DegeneratePressure {
                    layer,
                    x3: x.f64(),
                    dp: dp.f64(),
                });
            }
        }
        for w in 0..s.x.len().saturating_sub(2) {
            let h = s.x[w + 1] - s.x[w];
            let dp = law.pressure(s.rho[w + 2]) - law.pressure(s.rho[w]);
            let weight = h / T::of(3.0) * (s.rho[w] + T::of(4.0) * s.rho[w + 1] + s.rho[w + 2]);
            layer_res = layer_res.max((dp + g * weight).abs() / (h + h));
        }
        max_res = max_res.max(layer_res);
        if layer_res > tol.hydrostatic * g * rho_scale {
            flags.push(AdmissibilityFlag::HydrostaticResidual {
                layer,
                residual: layer_res.f64(),
            });
        }
    }

    let p_top = profile.law_plus.pressure(profile.rho_top_interface);
    let p_bot = profile.law_minus.pressure(profile.rho_bot_interface);
    let cont = (p_top - p_bot).abs();
    if cont > tol.pressure * p_top.abs().max(T::one()) {
        flags.push(AdmissibilityFlag::PressureContinuity {
            residual: cont.f64(),
        });
    }
    let top = (profile.law_plus.pressure(profile.rho1) - profile.p_atm).abs();
    if top > tol.pressure * profile.p_atm.max(T::one()) {
        flags.push(AdmissibilityFlag::TopPressure {
            residual: top.f64(),
        });
    }

    AdmissibilityReport {
        min_density,
        min_density_at,
        min_dpressure: min_dp,
        max_hydrostatic_residual: max_res,
        interface_pressure_residual: cont,
        top_pressure_residual: top,
        flags,
    }
}
