//! Hydrostatic two-layer equilibrium.

mod law;
mod params;
mod profile;

use std::io::Write;

pub use law::{LawKind, PressureLaw, TabulatedLaw};
pub use params::{Layer, PhysicalParams};
pub use profile::{
    check_admissibility, check_admissibility_with, density_jump, solve_equilibrium,
    AdmissibilityFlag, AdmissibilityReport, AdmissibilityTolerances, EquilibriumProfile,
    LayerSamples,
};

use crate::error::Result;
use crate::scalar::Real;

/// `h'(rho(x3))` using an explicitly supplied law.
pub fn enthalpy_weight<T: Real>(
    profile: &EquilibriumProfile<T>,
    x3: T,
    law: &PressureLaw<T>,
) -> Result<T> {
    let rho = profile.density_at(x3)?;
    Ok(law.enthalpy_weight(rho))
}

/// Writes the sampled profile as CSV, lower layer first; the interface
/// appears once per layer.
pub fn write_profile_csv<T: Real, W: Write>(
    profile: &EquilibriumProfile<T>,
    mut out: W,
) -> std::io::Result<()> {
    writeln!(out, "x3,rho,pressure,h_prime,layer")?;
    for layer in [Layer::Lower, Layer::Upper] {
        let law = profile.law(layer);
        let s = profile.samples(layer);
        for &x in s.coordinates() {
            let rho = profile.density(layer, x);
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e},{}",
                x,
                rho,
                law.pressure(rho),
                law.enthalpy_weight(rho),
                layer.name()
            )?;
        }
    }
    Ok(())
}
