//! Linear stability analysis of two compressible viscous fluid layers
//! separated by a free interface under a free surface.
//!
//! Every numerical routine is generic over [`Real`]; the aliases below fix
//! the scalar to `f64`.

// negated comparisons reject NaN along with out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// banded kernels index several arrays with one offset
#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod dispersion;
pub mod equilibrium;
pub mod error;
pub mod evolve;
pub mod linalg;
pub mod modes;
pub mod poisson;
pub mod quadrature;
pub mod scalar;
pub mod scenarios;
pub mod variational;

pub use error::{Error, Result};
pub use scalar::{Field, Real};

/// Double-precision aliases for the common entry points.
pub type Profile = equilibrium::EquilibriumProfile<f64>;
pub type Params = equilibrium::PhysicalParams<f64>;
pub type Law = equilibrium::PressureLaw<f64>;
pub type Mesh = variational::Mesh1D<f64>;
pub type Forms = variational::QuadraticForms<f64>;
pub type Point = dispersion::DispersionPoint<f64>;
pub type Summary = dispersion::GrowthSummary<f64>;
pub type Solver = dispersion::SolverOptions<f64>;
pub type Mode = modes::GrowingMode<f64>;
pub type Operators = evolve::Semidiscrete<f64>;
pub type State = evolve::FrequencyState<f64>;
pub type Field2D = poisson::PeriodicField<f64>;
