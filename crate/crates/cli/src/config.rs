use std::path::Path;

use rtwave::dispersion::SolverOptions;
use rtwave::equilibrium::{PhysicalParams, PressureLaw};
use rtwave::evolve::Scheme;
use rtwave::variational::EigenOptions;
use serde::Deserialize;

use crate::failure::Failure;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub geometry: Geometry,
    pub gravity: Gravity,
    pub atmosphere: Atmosphere,
    pub fluids: Fluids,
    #[serde(default)]
    pub surface_tension: SurfaceTension,
    #[serde(default)]
    pub numerics: Numerics,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Geometry {
    pub b: f64,
    pub ell: f64,
    #[serde(rename = "L1")]
    pub l1: f64,
    #[serde(rename = "L2")]
    pub l2: f64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Gravity {
    pub g: f64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Atmosphere {
    pub p_atm: f64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fluids {
    pub plus: Fluid,
    pub minus: Fluid,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fluid {
    pub law: PressureLaw<f64>,
    pub mu: f64,
    #[serde(default)]
    pub mu_prime: f64,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceTension {
    #[serde(default)]
    pub sigma_plus: f64,
    #[serde(default)]
    pub sigma_minus: f64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Numerics {
    pub n_minus: usize,
    pub n_plus: usize,
    /// Samples per layer of the equilibrium table.
    pub n_samples: usize,
    pub eig_tol: f64,
    pub root_tol: f64,
    pub s_max_factor: f64,
    pub xi_cutoff: Option<f64>,
    /// Defaults to `0.01 / lambda` for the time-evolution oracle.
    pub dt: Option<f64>,
    /// Defaults to `3 / lambda`.
    pub t_final: Option<f64>,
    pub scheme: Scheme,
    pub fit_window: f64,
    pub zero_epsilon: f64,
}

impl Default for Numerics {
    fn default() -> Self {
        Self {
            n_minus: 100,
            n_plus: 100,
            n_samples: 257,
            eig_tol: 1e-10,
            root_tol: 1e-10,
            s_max_factor: 1.25,
            xi_cutoff: None,
            dt: None,
            t_final: None,
            scheme: Scheme::Trapezoidal,
            fit_window: 0.5,
            zero_epsilon: 1e-12,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?;
        let cfg: RunConfig = serde_json::from_str(&text)
            .map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn params(&self) -> PhysicalParams<f64> {
        PhysicalParams {
            b: self.geometry.b,
            ell: self.geometry.ell,
            l1: self.geometry.l1,
            l2: self.geometry.l2,
            g: self.gravity.g,
            p_atm: self.atmosphere.p_atm,
            mu_plus: self.fluids.plus.mu,
            mu_minus: self.fluids.minus.mu,
            mu_prime_plus: self.fluids.plus.mu_prime,
            mu_prime_minus: self.fluids.minus.mu_prime,
            sigma_plus: self.surface_tension.sigma_plus,
            sigma_minus: self.surface_tension.sigma_minus,
        }
    }

    pub fn solver(&self) -> SolverOptions<f64> {
        let n = &self.numerics;
        SolverOptions {
            eigen: EigenOptions {
                tol: n.eig_tol,
                ..EigenOptions::default()
            },
            root_tol: n.root_tol,
            s_max_factor: n.s_max_factor,
            ..SolverOptions::default()
        }
    }

    pub fn validate(&self) -> Result<(), Failure> {
        self.params().validate()?;
        self.fluids.plus.law.validate()?;
        self.fluids.minus.law.validate()?;
        let n = &self.numerics;
        for (name, v) in [
            ("n_minus", n.n_minus),
            ("n_plus", n.n_plus),
            ("n_samples", n.n_samples),
        ] {
            if v == 0 {
                return Err(Failure::Validation(format!(
                    "numerics.{name} must be positive"
                )));
            }
        }
        let mut positive = vec![
            ("eig_tol", n.eig_tol),
            ("root_tol", n.root_tol),
            ("s_max_factor", n.s_max_factor),
            ("fit_window", n.fit_window),
            ("zero_epsilon", n.zero_epsilon),
        ];
        for (name, v) in [
            ("xi_cutoff", n.xi_cutoff),
            ("dt", n.dt),
            ("t_final", n.t_final),
        ] {
            if let Some(v) = v {
                positive.push((name, v));
            }
        }
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Failure::Validation(format!(
                    "numerics.{name} = {v} must be positive"
                )));
            }
        }
        if n.fit_window > 1.0 {
            return Err(Failure::Validation(format!(
                "numerics.fit_window = {} must not exceed 1",
                n.fit_window
            )));
        }
        Ok(())
    }
}
