use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex;
use rayon::prelude::*;
use rtwave::classify::regime_report;
use rtwave::dispersion::{self, DispersionPoint, GrowthSummary};
use rtwave::equilibrium::{write_profile_csv, EquilibriumProfile, PhysicalParams};
use rtwave::evolve::{self, FrequencyState, IntegratorParams, Semidiscrete};
use rtwave::modes::{assemble_mode, export_mode};
use rtwave::poisson::{extend_interface, read_grid_csv, write_grid_csv, ExtensionParams};
use rtwave::variational::{build_mesh, Mesh1D};
use serde::Serialize;

use crate::config::RunConfig;
use crate::failure::Failure;

type Outcome = Result<(), Failure>;

/// Equilibrium, mesh and parameters shared by most commands.
pub struct Setup {
    pub cfg: RunConfig,
    pub params: PhysicalParams<f64>,
    pub profile: EquilibriumProfile<f64>,
    pub mesh: Mesh1D<f64>,
}

impl Setup {
    pub fn new(cfg: RunConfig) -> Result<Self, Failure> {
        let params = cfg.params();
        let profile = rtwave::equilibrium::solve_equilibrium(
            &cfg.fluids.plus.law,
            &cfg.fluids.minus.law,
            &params,
            cfg.numerics.n_samples,
        )?;
        let mesh = build_mesh(
            params.b,
            params.ell,
            cfg.numerics.n_minus,
            cfg.numerics.n_plus,
        )?;
        Ok(Self {
            cfg,
            params,
            profile,
            mesh,
        })
    }

    fn growth(&self, xi_abs: f64) -> Result<DispersionPoint<f64>, Failure> {
        Ok(dispersion::growth_rate(
            &self.profile,
            xi_abs,
            &self.mesh,
            &self.params,
            &self.cfg.solver(),
        )?)
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Solver(format!("{}: {e}", path.display()))
}

fn create(path: &Path) -> Result<BufWriter<fs::File>, Failure> {
    fs::File::create(path)
        .map(BufWriter::new)
        .map_err(|e| io_failure(path, e))
}

fn write_json<S: Serialize>(value: &S, path: &Path) -> Outcome {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| Failure::Solver(e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| io_failure(path, e))
}

pub fn equilibrium(setup: &Setup, out: &Path) -> Result<PathBuf, Failure> {
    let path = out.join("profile.csv");
    let mut w = create(&path)?;
    write_profile_csv(&setup.profile, &mut w)
        .and_then(|_| w.flush())
        .map_err(|e| io_failure(&path, e))?;
    Ok(path)
}

pub fn alpha(setup: &Setup, xi_abs: f64, s: f64) -> Result<f64, Failure> {
    if !(xi_abs > 0.0 && xi_abs.is_finite()) {
        return Err(Failure::Validation(format!(
            "--xi = {xi_abs} must be positive"
        )));
    }
    if !(s > 0.0 && s.is_finite()) {
        return Err(Failure::Validation(format!("--s = {s} must be positive")));
    }
    Ok(dispersion::alpha(
        &setup.profile,
        &setup.mesh,
        &setup.params,
        xi_abs,
        s,
        &setup.cfg.solver().eigen,
    )?)
}

#[derive(Serialize)]
struct SummaryJson {
    #[serde(rename = "Lambda")]
    lambda_max: f64,
    lambda_star: f64,
    argmax_xi: Option<[f64; 2]>,
    attained: bool,
    star_within_half: bool,
    sigma_c: f64,
    xi_c: Option<f64>,
    points: usize,
}

impl From<&GrowthSummary<f64>> for SummaryJson {
    fn from(s: &GrowthSummary<f64>) -> Self {
        Self {
            lambda_max: s.lambda_max,
            lambda_star: s.lambda_star,
            argmax_xi: s.argmax_xi,
            attained: s.attained,
            star_within_half: s.star_within_half,
            sigma_c: s.sigma_c,
            xi_c: s.xi_c,
            points: s.curve.len(),
        }
    }
}

/// Sweeps the unstable band. When that band holds no lattice point and a
/// cutoff is set, the curve lists the (zero) rates up to the cutoff instead.
pub fn dispersion(setup: &Setup, out: &Path) -> Result<GrowthSummary<f64>, Failure> {
    let opts = setup.cfg.solver();
    let cutoff = setup.cfg.numerics.xi_cutoff;
    let mut summary =
        dispersion::sweep_lattice(&setup.profile, &setup.mesh, &setup.params, cutoff, &opts)?;
    if let (true, Some(c)) = (summary.curve.is_empty(), cutoff) {
        let shells = dispersion::lattice_shells(setup.params.l1, setup.params.l2, c)?;
        summary.curve = shells
            .par_iter()
            .map(|sh| {
                dispersion::growth_rate_at(&setup.profile, sh.xi, &setup.mesh, &setup.params, &opts)
            })
            .collect::<rtwave::Result<Vec<_>>>()?;
    }
    let path = out.join("dispersion.csv");
    let mut w = create(&path)?;
    let body = |w: &mut BufWriter<fs::File>| -> std::io::Result<()> {
        writeln!(
            w,
            "xi1,xi2,xi_abs,lambda,alpha_at_star,iterations,converged"
        )?;
        for p in &summary.curve {
            writeln!(
                w,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{},{}",
                p.xi[0], p.xi[1], p.xi_abs, p.lambda, p.alpha_at_star, p.iterations, p.converged
            )?;
        }
        w.flush()
    };
    body(&mut w).map_err(|e| io_failure(&path, e))?;
    write_json(&SummaryJson::from(&summary), &out.join("dispersion.json"))?;
    Ok(summary)
}

pub fn growth(setup: &Setup, xi_abs: f64, out: &Path) -> Result<DispersionPoint<f64>, Failure> {
    let point = setup.growth(xi_abs)?;
    write_json(&point, &out.join("growth.json"))?;
    Ok(point)
}

pub fn classify(setup: &Setup, out: &Path) -> Result<rtwave::classify::RegimeReport, Failure> {
    let eps = setup.cfg.numerics.zero_epsilon;
    let sigma_c = dispersion::critical_tension(&setup.profile, &setup.params);
    let mut jump = setup.profile.jump;
    if jump.abs() <= eps {
        jump = 0.0;
    }
    let mut sigma_minus = setup.params.sigma_minus;
    if (sigma_minus - sigma_c).abs() <= eps {
        sigma_minus = sigma_c;
    }
    let report = regime_report(jump, setup.params.sigma_plus, sigma_minus, sigma_c)?;
    write_json(&report, &out.join("classify.json"))?;
    Ok(report)
}

pub fn mode(setup: &Setup, xi_abs: f64, out: &Path) -> Result<f64, Failure> {
    let point = setup.growth(xi_abs)?;
    let mode = assemble_mode(&point, &setup.profile, &setup.mesh, &setup.params)?;
    export_mode(&mode, &out.join("mode.csv"))?;
    Ok(mode.lambda)
}

#[derive(Serialize)]
pub struct OracleReport {
    pub xi_abs: f64,
    pub lambda_variational: f64,
    pub lambda_fitted: f64,
    pub relative_error: Option<f64>,
    pub energy_rate: f64,
    pub max_balance_residual: f64,
    pub dt: f64,
    pub t_final: f64,
    pub steps: usize,
    pub scheme: evolve::Scheme,
}

/// Integrates from the growing mode when one exists, otherwise from a unit
/// interface displacement; the latter needs explicit `dt` and `t_final`.
pub fn oracle(setup: &Setup, xi_abs: f64, out: &Path) -> Result<OracleReport, Failure> {
    let n = &setup.cfg.numerics;
    let point = setup.growth(xi_abs)?;
    let ops: Semidiscrete<f64> =
        evolve::semidiscretize(&setup.profile, &setup.mesh, [xi_abs, 0.0], &setup.params)?;
    let lambda = point.lambda;
    let (state, dt, t_final) = if lambda > 0.0 {
        let mode = assemble_mode(&point, &setup.profile, &setup.mesh, &setup.params)?;
        let state = evolve::mode_initial_state(&ops, &mode)?;
        (
            state,
            n.dt.unwrap_or(0.01 / lambda),
            n.t_final.unwrap_or(3.0 / lambda),
        )
    } else {
        let (Some(dt), Some(t_final)) = (n.dt, n.t_final) else {
            return Err(Failure::Validation(format!(
                "no growing mode at |xi| = {xi_abs}; numerics.dt and numerics.t_final are required"
            )));
        };
        let mut state: FrequencyState<f64> = ops.zero_state();
        state.eta_hat_minus = Complex::new(1.0, 0.0);
        (state, dt, t_final)
    };
    let ip = IntegratorParams {
        dt,
        t_final,
        scheme: n.scheme,
        fit_window: n.fit_window,
    };
    let traj = evolve::advance(&state, &ops, &ip)?;
    evolve::write_trajectory_csv(&traj, &out.join("trajectory.csv"))?;
    let fitted = evolve::measure_growth(&traj, n.fit_window)?;
    let energy_rate = evolve::measure_energy_growth(&traj, n.fit_window)?;
    let scale = traj
        .samples
        .iter()
        .map(|s| s.energy.abs() / dt + s.dissipation.abs())
        .fold(0.0, f64::max);
    let max_balance = evolve::energy_balance_residual(&traj)
        .into_iter()
        .map(f64::abs)
        .fold(0.0, f64::max);
    let report = OracleReport {
        xi_abs,
        lambda_variational: lambda,
        lambda_fitted: fitted,
        relative_error: (lambda > 0.0).then(|| (fitted - lambda).abs() / lambda),
        energy_rate,
        max_balance_residual: if scale > 0.0 {
            max_balance / scale
        } else {
            max_balance
        },
        dt,
        t_final,
        steps: ip.steps(),
        scheme: n.scheme,
    };
    write_json(&report, &out.join("oracle.json"))?;
    Ok(report)
}

pub fn extend(
    input: &Path,
    m: usize,
    x3: f64,
    order: usize,
    out: &Path,
) -> Result<PathBuf, Failure> {
    if !x3.is_finite() {
        return Err(Failure::Validation(format!("--x3 = {x3} must be finite")));
    }
    let field = read_grid_csv::<f64>(input)?;
    let params = ExtensionParams::with_default_rates(m)?;
    let ext = extend_interface(&field, &params)?;
    let values = ext.derivative(order, x3)?;
    let path = out.join("extension.csv");
    write_grid_csv(&values, &path)?;
    Ok(path)
}
