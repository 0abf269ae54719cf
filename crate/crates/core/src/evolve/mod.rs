//! Time integration of the linearized system at a single horizontal
//! frequency, used as an independent check on the dispersion relation.

mod integrate;
mod operators;

pub use integrate::{
    advance, energy_balance_residual, fit_exponential_rate, measure_energy_growth, measure_growth,
    state_norm, write_trajectory_csv, IntegratorParams, Scheme, Stepper, Trajectory,
    TrajectorySample,
};
pub use operators::{semidiscretize, FrequencyState, Semidiscrete};

use crate::error::{Error, Result};
use crate::modes::GrowingMode;
use crate::scalar::Real;

/// Initial state for a growing mode computed on the same mesh as `ops`.
pub fn mode_initial_state<T: Real>(
    ops: &Semidiscrete<T>,
    mode: &GrowingMode<T>,
) -> Result<FrequencyState<T>> {
    let dx = (mode.xi[0] - ops.xi[0]).abs() + (mode.xi[1] - ops.xi[1]).abs();
    if dx > T::of(1e-12) * (T::one() + ops.xi_abs()) {
        return Err(Error::InvalidInput(
            "mode frequency differs from the operator frequency".into(),
        ));
    }
    let [phi, theta, psi] = mode.nodal_fields();
    ops.mode_state(&phi, &theta, &psi, mode.lambda)
}
