//! Reference configurations used by tests, examples and CLI defaults.

use crate::equilibrium::{solve_equilibrium, EquilibriumProfile, PhysicalParams, PressureLaw};
use crate::error::Result;
use crate::scalar::Real;

/// Pressure laws plus physical parameters.
#[derive(Clone, Debug)]
pub struct Scenario<T> {
    pub plus: PressureLaw<T>,
    pub minus: PressureLaw<T>,
    pub params: PhysicalParams<T>,
}

impl<T: Real> Scenario<T> {
    pub fn profile(&self, n_samples: usize) -> Result<EquilibriumProfile<T>> {
        solve_equilibrium(&self.plus, &self.minus, &self.params, n_samples)
    }

    pub fn with_sigma(mut self, sigma_plus: T, sigma_minus: T) -> Self {
        self.params.sigma_plus = sigma_plus;
        self.params.sigma_minus = sigma_minus;
        self
    }
}

fn unit_params<T: Real>() -> PhysicalParams<T> {
    PhysicalParams {
        b: T::one(),
        ell: T::one(),
        l1: T::one(),
        l2: T::one(),
        g: T::one(),
        p_atm: T::one(),
        mu_plus: T::one(),
        mu_minus: T::one(),
        mu_prime_plus: T::zero(),
        mu_prime_minus: T::zero(),
        sigma_plus: T::zero(),
        sigma_minus: T::zero(),
    }
}

/// Isothermal layers with `P_+ = rho`, `P_- = 2 rho` and unit geometry,
/// gravity, atmosphere and shear viscosity; heavy fluid on top.
pub fn unstable_isothermal<T: Real>() -> Scenario<T> {
    Scenario {
        plus: PressureLaw::isothermal(T::one()),
        minus: PressureLaw::isothermal(T::of(2.0)),
        params: unit_params(),
    }
}

/// [`unstable_isothermal`] with the two laws exchanged; the density jump
/// is negative.
pub fn stable_swapped<T: Real>() -> Scenario<T> {
    Scenario {
        plus: PressureLaw::isothermal(T::of(2.0)),
        minus: PressureLaw::isothermal(T::one()),
        params: unit_params(),
    }
}
