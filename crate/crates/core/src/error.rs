use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the analyzer.
///
/// Numeric payloads are reported as `f64` regardless of the scalar type the
/// failing computation ran in.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("pressure law cannot be inverted at p = {pressure}")]
    InverseFailure { pressure: f64 },

    #[error("non-positive density {rho} at x3 = {x3}")]
    NonPositiveDensity { x3: f64, rho: f64 },

    #[error("degenerate pressure law: P'({rho}) = {dp} at x3 = {x3}")]
    DegeneratePressure { x3: f64, rho: f64, dp: f64 },

    #[error("coordinate x3 = {x3} outside [{lo}, {hi}]")]
    Domain { x3: f64, lo: f64, hi: f64 },

    #[error("ill-conditioned solve: residual {residual:e}")]
    IllConditioned { residual: f64 },

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    SolverDivergence { iterations: usize, residual: f64 },

    #[error("no sign change of s^2 + alpha(s) on the bracket at |xi| = {xi_abs} (f(s_min) = {f_lo:e}, f(s_max) = {f_hi:e})")]
    NoSignChange { xi_abs: f64, f_lo: f64, f_hi: f64 },

    #[error("density jump {jump} is not positive")]
    NotUnstableOrientation { jump: f64 },

    #[error("degenerate mode: |psi(0)| = {psi0:e}")]
    DegenerateMode { psi0: f64 },

    #[error("matrix is not a rotation (orthogonality defect {defect:e}, det {det})")]
    NotARotation { defect: f64, det: f64 },

    #[error("implicit step matrix is singular (pivot {pivot:e} at row {row})")]
    SingularStep { row: usize, pivot: f64 },

    #[error("interface amplitude underflowed at t = {t}")]
    ZeroSignal { t: f64 },

    #[error("singular matrix (pivot {pivot:e} at row {row})")]
    Singular { row: usize, pivot: f64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
