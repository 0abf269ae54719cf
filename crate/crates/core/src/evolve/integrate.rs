use std::io::Write;
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{norm2, BandedLu};
use crate::scalar::Real;

use super::operators::{FrequencyState, Semidiscrete};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    ImplicitEuler,
    #[default]
    Trapezoidal,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorParams<T> {
    pub dt: T,
    pub t_final: T,
    pub scheme: Scheme,
    /// Trailing fraction of the trajectory used by [`measure_growth`].
    pub fit_window: T,
}

impl<T: Real> IntegratorParams<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > T::zero() && self.dt.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.t_final >= T::zero() && self.t_final.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "t_final must be non-negative, got {}",
                self.t_final
            )));
        }
        if !(self.fit_window > T::zero() && self.fit_window <= T::one()) {
            return Err(Error::InvalidInput(format!(
                "fit_window must lie in (0, 1], got {}",
                self.fit_window
            )));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.t_final / self.dt).round().to_usize().unwrap_or(0)
    }
}

/// Scalar diagnostics recorded after every step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectorySample<T> {
    pub t: T,
    pub eta_minus: Complex<T>,
    pub eta_plus: Complex<T>,
    pub energy: T,
    /// Viscous dissipation at the step midpoint (instantaneous at `t = 0`).
    pub dissipation: T,
    /// `(E_new - E_old) / dt + dissipation`; zero up to round-off for the
    /// trapezoidal scheme.
    pub balance_residual: T,
}

#[derive(Clone, Debug)]
pub struct Trajectory<T> {
    pub dt: T,
    pub scheme: Scheme,
    pub samples: Vec<TrajectorySample<T>>,
    pub final_state: FrequencyState<T>,
}

/// One-step propagator `A y_{n+1} = B y_n` with a factored `A`.
pub struct Stepper<'a, T: Real> {
    ops: &'a Semidiscrete<T>,
    lhs: BandedLu<Complex<T>>,
    rhs: crate::linalg::BandedMatrix<Complex<T>>,
}

impl<'a, T: Real> Stepper<'a, T> {
    /// Factors the step matrix. A negative `dt` runs the scheme backwards.
    pub fn new(ops: &'a Semidiscrete<T>, dt: T, scheme: Scheme) -> Result<Self> {
        let implicit = match scheme {
            Scheme::ImplicitEuler => dt,
            Scheme::Trapezoidal => dt * T::of(0.5),
        };
        let explicit = dt - implicit;
        let one = Complex::new(T::one(), T::zero());
        let lhs = ops
            .mass
            .combine(one, &ops.operator, Complex::new(-implicit, T::zero()))
            .lu()
            .map_err(|e| match e {
                Error::Singular { row, pivot } => Error::SingularStep { row, pivot },
                e => e,
            })?;
        let rhs = ops
            .mass
            .combine(one, &ops.operator, Complex::new(explicit, T::zero()));
        Ok(Self { ops, lhs, rhs })
    }

    pub fn step(&self, y: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut next = self.rhs.matvec(y);
        self.lhs.solve_in_place(&mut next);
        next
    }

    pub fn operators(&self) -> &Semidiscrete<T> {
        self.ops
    }
}

/// Integrates from `state` to `state.time + t_final`.
pub fn advance<T: Real>(
    state: &FrequencyState<T>,
    ops: &Semidiscrete<T>,
    params: &IntegratorParams<T>,
) -> Result<Trajectory<T>> {
    params.validate()?;
    let stepper = Stepper::new(ops, params.dt, params.scheme)?;
    let mut y = ops.pack(state)?;
    let mut energy = ops.total_energy(&y);
    let mut samples = vec![TrajectorySample {
        t: state.time,
        eta_minus: state.eta_hat_minus,
        eta_plus: state.eta_hat_plus,
        energy,
        dissipation: ops.dissipation(&y),
        balance_residual: T::zero(),
    }];
    let half = Complex::new(T::of(0.5), T::zero());
    let mut t = state.time;
    for n in 1..=params.steps() {
        let next = stepper.step(&y);
        let mid: Vec<_> = y.iter().zip(&next).map(|(&a, &b)| (a + b) * half).collect();
        let dissipation = ops.dissipation(&mid);
        let e_next = ops.total_energy(&next);
        t = state.time + params.dt * T::of_usize(n);
        samples.push(TrajectorySample {
            t,
            eta_minus: next[ops.layout.eta_minus],
            eta_plus: next[ops.layout.eta_plus],
            energy: e_next,
            dissipation,
            balance_residual: (e_next - energy) / params.dt + dissipation,
        });
        energy = e_next;
        y = next;
    }
    Ok(Trajectory {
        dt: params.dt,
        scheme: params.scheme,
        samples,
        final_state: ops.unpack(&y, t),
    })
}

/// Least-squares slope of `ln |v|` against `t`.
pub fn fit_exponential_rate<T: Real>(t: &[T], v: &[T]) -> Result<T> {
    if t.len() != v.len() || t.len() < 2 {
        return Err(Error::InvalidInput(
            "rate fit needs at least two samples".into(),
        ));
    }
    let mut logs = Vec::with_capacity(v.len());
    for (&ti, &vi) in t.iter().zip(v) {
        let m = vi.abs();
        if !(m > T::min_positive_value()) || !m.is_finite() {
            return Err(Error::ZeroSignal { t: ti.f64() });
        }
        logs.push(m.ln());
    }
    let n = T::of_usize(t.len());
    let tm = t.iter().copied().sum::<T>() / n;
    let lm = logs.iter().copied().sum::<T>() / n;
    let mut num = T::zero();
    let mut den = T::zero();
    for (&ti, &li) in t.iter().zip(&logs) {
        num += (ti - tm) * (li - lm);
        den += (ti - tm) * (ti - tm);
    }
    if !(den > T::zero()) {
        return Err(Error::InvalidInput(
            "rate fit needs distinct sample times".into(),
        ));
    }
    Ok(num / den)
}

fn window<T: Real>(
    samples: &[TrajectorySample<T>],
    fit_window: T,
) -> Result<&[TrajectorySample<T>]> {
    if !(fit_window > T::zero() && fit_window <= T::one()) {
        return Err(Error::InvalidInput(format!(
            "fit_window must lie in (0, 1], got {fit_window}"
        )));
    }
    let (Some(first), Some(last)) = (samples.first(), samples.last()) else {
        return Err(Error::InvalidInput("empty trajectory".into()));
    };
    let start = last.t - fit_window * (last.t - first.t);
    let from = samples.iter().position(|s| s.t >= start).unwrap_or(0);
    Ok(&samples[from..])
}

/// Fitted growth rate of `|eta_-|` over the trailing `fit_window` fraction.
pub fn measure_growth<T: Real>(trajectory: &Trajectory<T>, fit_window: T) -> Result<T> {
    let w = window(&trajectory.samples, fit_window)?;
    let t: Vec<T> = w.iter().map(|s| s.t).collect();
    let v: Vec<T> = w.iter().map(|s| s.eta_minus.norm()).collect();
    fit_exponential_rate(&t, &v)
}

/// Fitted growth rate of `|E|` over the trailing `fit_window` fraction.
pub fn measure_energy_growth<T: Real>(trajectory: &Trajectory<T>, fit_window: T) -> Result<T> {
    let w = window(&trajectory.samples, fit_window)?;
    let t: Vec<T> = w.iter().map(|s| s.t).collect();
    let v: Vec<T> = w.iter().map(|s| s.energy).collect();
    fit_exponential_rate(&t, &v)
}

/// Per-step residual of the discrete energy identity
/// `(E_{n+1} - E_n) / dt + a(u_mid, u_mid)`; the first sample has none.
pub fn energy_balance_residual<T: Real>(trajectory: &Trajectory<T>) -> Vec<T> {
    trajectory
        .samples
        .iter()
        .skip(1)
        .map(|s| s.balance_residual)
        .collect()
}

/// Euclidean norm of the packed state.
pub fn state_norm<T: Real>(ops: &Semidiscrete<T>, state: &FrequencyState<T>) -> Result<T> {
    Ok(norm2(&ops.pack(state)?))
}

pub fn write_trajectory_csv<T: Real>(trajectory: &Trajectory<T>, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = std::io::BufWriter::new(file);
    let mut body = || -> std::io::Result<()> {
        writeln!(
            w,
            "t,abs_eta_minus,abs_eta_plus,energy,dissipation,balance_residual"
        )?;
        for s in &trajectory.samples {
            writeln!(
                w,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                s.t.f64(),
                s.eta_minus.norm().f64(),
                s.eta_plus.norm().f64(),
                s.energy.f64(),
                s.dissipation.f64(),
                s.balance_residual.f64()
            )?;
        }
        w.flush()
    };
    body().map_err(|e| Error::io(path, e))
}
