//! Finite-element discretization of the reduced energy and its constrained
//! minimization as a symmetric-definite eigenproblem.

mod assemble;
mod eigen;
mod mesh;

pub use assemble::{
    assemble_forms, assemble_forms_3field, assemble_forms_alt, surface_coefficients,
    QuadraticForms, SurfaceCoefficients,
};
pub use eigen::{
    evaluate_energy, min_eig, min_eig_with, pencil_min_dense, pencil_min_lanczos, write_coo,
    EigenOptions,
};
pub use mesh::{build_mesh, Element, Mesh1D};
