//! End-to-end acceptance checks. Each check prints one PASS/FAIL line with
//! its runtime; the binary exits non-zero if any check fails.

use std::f64::consts::E;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rtwave::classify::{classify_regime, RegimeLabel};
use rtwave::dispersion::{
    alpha, critical_tension, growth_bound, growth_rate, lattice_shells, probe_norm_squared,
    probe_profile, sweep_lattice, SolverOptions,
};
use rtwave::equilibrium::{Layer, PressureLaw};
use rtwave::evolve::{
    advance, measure_energy_growth, measure_growth, mode_initial_state, semidiscretize,
    IntegratorParams, Scheme,
};
use rtwave::modes::{assemble_mode, rotate_mode, rotation};
use rtwave::poisson::{extend_interface, ExtensionParams, PeriodicField};
use rtwave::scenarios::{stable_swapped, unstable_isothermal, Scenario};
use rtwave::variational::{
    assemble_forms, assemble_forms_3field, build_mesh, evaluate_energy, min_eig, min_eig_with,
    pencil_min_dense, pencil_min_lanczos, EigenOptions,
};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: rtwave::Error) -> String {
    e.to_string()
}

/// Unstable configurations with varied laws, geometry, viscosity and tension.
fn unstable_configs() -> Vec<Scenario<f64>> {
    let base = unstable_isothermal::<f64>();
    let tension = unstable_isothermal::<f64>().with_sigma(0.3, 0.4);
    let mut poly = unstable_isothermal::<f64>();
    poly.plus = PressureLaw::polytropic(1.0, 1.4);
    let mut geom = unstable_isothermal::<f64>();
    geom.params.b = 2.0;
    geom.params.ell = 0.5;
    geom.params.g = 2.0;
    geom.params.l2 = 1.5;
    let mut visc = unstable_isothermal::<f64>();
    visc.params.mu_plus = 0.5;
    visc.params.mu_minus = 2.0;
    visc.params.mu_prime_plus = 0.3;
    visc.params.mu_prime_minus = 0.1;
    vec![base, tension, poly, geom, visc]
}

fn equilibrium_exactness() -> Check {
    let sc = unstable_isothermal::<f64>();
    let p = sc.profile(257).map_err(err)?;
    let mut worst = 0.0f64;
    let mut count = 0;
    for layer in [Layer::Lower, Layer::Upper] {
        let s = p.samples(layer);
        for (&x, &rho) in s.coordinates().iter().zip(s.densities()) {
            let exact = match layer {
                Layer::Upper => (1.0 - x).exp(),
                Layer::Lower => E / 2.0 * (-x / 2.0).exp(),
            };
            worst = worst.max((rho - exact).abs() / exact);
            count += 1;
        }
    }
    ensure(count >= 257, || format!("only {count} samples"))?;
    ensure(worst <= 1e-8, || format!("relative error {worst:e}"))?;
    Ok(format!(
        "max relative error {worst:.2e} over {count} samples"
    ))
}

/// Adaptive Simpson quadrature.
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, left, lm, flm, tol / 2.0, depth - 1)
            + recurse(f, m, fm, b, fb, right, rm, frm, tol / 2.0, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 50)
}

fn test_function_norm() -> Check {
    let closed: f64 = probe_norm_squared(1.0, 1.0, 5.0);
    let f = |x: f64| probe_profile(x, 1.0, 1.0, 5.0).powi(2);
    let quad = adaptive_simpson(&f, -1.0, 0.0, 1e-13) + adaptive_simpson(&f, 0.0, 1.0, 1e-13);
    ensure((closed - quad).abs() <= 1e-6, || {
        format!("closed {closed} vs quadrature {quad}")
    })?;
    ensure((closed - 120.0 / 162.421875).abs() <= 1e-12, || {
        format!("closed {closed}")
    })?;
    Ok(format!("closed form {closed:.9}, quadrature {quad:.9}"))
}

fn lower_bound() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = f64::INFINITY;
    let mut tested = 0;
    for sc in unstable_configs() {
        let p = sc.profile(257).map_err(err)?;
        ensure(p.jump > 0.0, || {
            format!("configuration has jump {}", p.jump)
        })?;
        let mesh = build_mesh(sc.params.b, sc.params.ell, 20, 20).map_err(err)?;
        for _ in 0..200 {
            let k = rng.gen_range(0.2..5.0);
            let s = 10f64.powf(rng.gen_range(-6.0..0.0));
            let forms = assemble_forms(&mesh, &p, k, &sc.params);
            let v: Vec<f64> = (0..forms.dof_count())
                .map(|_| rng.gen_range(-1.0..1.0))
                .collect();
            let (e, j) = evaluate_energy(&forms, &v, s);
            let normalized = e / j;
            let margin = normalized + sc.params.g * k;
            worst = worst.min(margin);
            tested += 1;
            ensure(margin >= -1e-10, || {
                format!(
                    "E/J = {normalized} below -g|xi| = {} at |xi| = {k}",
                    -sc.params.g * k
                )
            })?;
        }
        // the constrained minimizer is the sharpest vector available
        for k in [0.5, 1.0, 3.0] {
            let forms = assemble_forms(&mesh, &p, k, &sc.params);
            let (a, _) = min_eig(&forms, 1e-6).map_err(err)?;
            let margin = a + sc.params.g * k;
            worst = worst.min(margin);
            ensure(margin >= -1e-10, || {
                format!("alpha = {a} below -g|xi| at |xi| = {k}")
            })?;
        }
    }
    Ok(format!(
        "{tested} vectors plus minimizers, min E/J + g|xi| = {worst:.3e}"
    ))
}

fn monotonicity() -> Check {
    let mut strict = 0;
    for sc in unstable_configs() {
        let start = Instant::now();
        let p = sc.profile(257).map_err(err)?;
        let mesh = build_mesh(sc.params.b, sc.params.ell, 100, 100).map_err(err)?;
        let forms = assemble_forms(&mesh, &p, 1.0, &sc.params);
        let s_max = 1.25 * growth_bound(&p, &sc.params);
        let mut prev: Option<(f64, f64)> = None;
        let mut warm: Option<Vec<f64>> = None;
        for i in 0..10 {
            let s = s_max * 10f64.powf(-4.0 + 4.0 * i as f64 / 9.0);
            let (a, v) =
                min_eig_with(&forms, s, &EigenOptions::default(), warm.as_deref()).map_err(err)?;
            if let Some((a0, e1)) = prev {
                ensure(a >= a0, || {
                    format!("alpha decreased at s = {s}: {a0} -> {a}")
                })?;
                if e1 > 1e-12 {
                    ensure(a > a0, || {
                        format!("alpha not strictly increasing at s = {s}")
                    })?;
                    strict += 1;
                }
            }
            let e1 = 0.5 * forms.k1.quad_form(&v);
            prev = Some((a, e1));
            warm = Some(v);
        }
        let dt = start.elapsed();
        ensure(dt < Duration::from_secs(30), || {
            format!("configuration took {dt:?}")
        })?;
    }
    Ok(format!("{strict} strict increases over 5 configurations"))
}

fn growth_bound_check() -> Check {
    let sc = unstable_isothermal::<f64>();
    let p = sc.profile(257).map_err(err)?;
    let mesh = build_mesh(1.0, 1.0, 50, 50).map_err(err)?;
    let summary =
        sweep_lattice(&p, &mesh, &sc.params, Some(6.5), &SolverOptions::default()).map_err(err)?;
    let bound = growth_bound(&p, &sc.params);
    ensure(summary.curve.len() >= 20, || {
        format!("only {} frequencies", summary.curve.len())
    })?;
    let mut worst = 0.0f64;
    for pt in summary.curve.iter().filter(|pt| pt.converged) {
        worst = worst.max(pt.lambda / bound);
        ensure(pt.lambda <= bound * (1.0 + 1e-6), || {
            format!(
                "lambda {} exceeds bound {bound} at |xi| = {}",
                pt.lambda, pt.xi_abs
            )
        })?;
    }
    Ok(format!(
        "{} frequencies, max lambda / bound = {worst:.4}",
        summary.curve.len()
    ))
}

fn stability_threshold() -> Check {
    let base = unstable_isothermal::<f64>();
    let p0 = base.profile(257).map_err(err)?;
    let sigma_c = critical_tension(&p0, &base.params);
    let mesh = build_mesh(1.0, 1.0, 50, 50).map_err(err)?;
    let opts = SolverOptions::default();

    let above = unstable_isothermal::<f64>().with_sigma(0.5, 1.05 * sigma_c);
    let p = above.profile(257).map_err(err)?;
    let bound = growth_bound(&p, &above.params);
    let shells = lattice_shells(above.params.l1, above.params.l2, 4.0).map_err(err)?;
    let mut min_alpha = f64::INFINITY;
    for sh in &shells {
        for i in 0..6 {
            let s = 1.25 * bound * 10f64.powf(-5.0 + i as f64);
            let a = alpha(
                &p,
                &mesh,
                &above.params,
                sh.xi_abs,
                s.min(1.25 * bound),
                &opts.eigen,
            )
            .map_err(err)?;
            min_alpha = min_alpha.min(a);
            ensure(a >= -1e-9, || {
                format!("alpha = {a} at |xi| = {}, s = {s}", sh.xi_abs)
            })?;
        }
    }
    let summary = sweep_lattice(&p, &mesh, &above.params, Some(4.0), &opts).map_err(err)?;
    ensure(summary.lambda_max == 0.0, || {
        format!("Lambda = {}", summary.lambda_max)
    })?;

    let below = unstable_isothermal::<f64>().with_sigma(0.5, 0.5 * sigma_c);
    let pb = below.profile(257).map_err(err)?;
    let sb = sweep_lattice(&pb, &mesh, &below.params, None, &opts).map_err(err)?;
    ensure(sb.curve.iter().any(|pt| pt.lambda > 0.0), || {
        "no growing frequency below threshold".into()
    })?;
    Ok(format!(
        "above: min alpha {min_alpha:.3e} over {} shells, Lambda = 0; below: Lambda = {:.6}",
        shells.len(),
        sb.lambda_max
    ))
}

fn eigensolver_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let configs = unstable_configs();
    let mut worst = 0.0f64;
    for trial in 0..50 {
        let sc = &configs[trial % configs.len()];
        let p = sc.profile(129).map_err(err)?;
        let n = rng.gen_range(4..=19);
        let mesh = build_mesh(sc.params.b, sc.params.ell, n, n).map_err(err)?;
        let k = rng.gen_range(0.2..6.0);
        let s = 10f64.powf(rng.gen_range(-4.0..0.5));
        let forms = assemble_forms(&mesh, &p, k, &sc.params);
        ensure(forms.dof_count() <= 80, || {
            format!("{} unknowns", forms.dof_count())
        })?;
        let a = forms.energy_matrix(s);
        let (dense, _) = pencil_min_dense(&a, &forms.m).map_err(err)?;
        let (iter, _) = pencil_min_lanczos(
            &a,
            &forms.m,
            forms.lower_bound,
            &EigenOptions::default(),
            None,
        )
        .map_err(err)?;
        let d = (dense - iter).abs();
        worst = worst.max(d);
        ensure(d <= 1e-9, || {
            format!("dense {dense} vs iterative {iter} (trial {trial})")
        })?;
    }
    Ok(format!("50 triples, max |difference| {worst:.2e}"))
}

fn mesh_convergence() -> Check {
    let sc = unstable_isothermal::<f64>();
    let p = sc.profile(257).map_err(err)?;
    let samples = [(0.5, 0.02), (1.0, 0.07), (2.5, 0.2)];
    let mut orders = Vec::new();
    for (k, s) in samples {
        let mut values = Vec::new();
        for n in [25, 50, 100, 200] {
            let mesh = build_mesh(1.0, 1.0, n, n).map_err(err)?;
            let forms = assemble_forms(&mesh, &p, k, &sc.params);
            values.push(min_eig(&forms, s).map_err(err)?.0);
        }
        for w in values.windows(3) {
            let order = ((w[0] - w[1]) / (w[1] - w[2])).abs().log2();
            orders.push(order);
            ensure(order >= 1.9, || {
                format!("order {order:.3} at |xi| = {k}, s = {s}: {values:?}")
            })?;
        }
    }
    let min = orders.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(format!("min observed order {min:.3}"))
}

fn evolution_oracle() -> Check {
    let sc = unstable_isothermal::<f64>();
    let p = sc.profile(257).map_err(err)?;
    let mesh = build_mesh(1.0, 1.0, 200, 200).map_err(err)?;
    let pt = growth_rate(&p, 1.0, &mesh, &sc.params, &SolverOptions::default()).map_err(err)?;
    let mode = assemble_mode(&pt, &p, &mesh, &sc.params).map_err(err)?;
    let ops = semidiscretize(&p, &mesh, [1.0, 0.0], &sc.params).map_err(err)?;
    let state = mode_initial_state(&ops, &mode).map_err(err)?;
    let lambda = pt.lambda;
    let params = IntegratorParams {
        dt: 0.01 / lambda,
        t_final: 3.0 / lambda,
        scheme: Scheme::Trapezoidal,
        fit_window: 0.5,
    };
    let traj = advance(&state, &ops, &params).map_err(err)?;
    let fitted = measure_growth(&traj, 0.5).map_err(err)?;
    let rel = (fitted - lambda).abs() / lambda;
    ensure(rel <= 0.02, || {
        format!("fitted {fitted} vs lambda {lambda}")
    })?;
    Ok(format!(
        "lambda {lambda:.6}, fitted {fitted:.6}, relative error {rel:.2e}"
    ))
}

fn energy_identity() -> Check {
    let st = stable_swapped::<f64>();
    let p = st.profile(257).map_err(err)?;
    let mesh = build_mesh(1.0, 1.0, 50, 50).map_err(err)?;
    let ops = semidiscretize(&p, &mesh, [1.0, 0.0], &st.params).map_err(err)?;
    let mut state = ops.zero_state();
    state.eta_hat_minus = num_complex::Complex::new(1.0, 0.0);
    state.eta_hat_plus = num_complex::Complex::new(0.3, -0.2);
    let params = IntegratorParams {
        dt: 0.02,
        t_final: 20.0,
        scheme: Scheme::Trapezoidal,
        fit_window: 0.5,
    };
    let traj = advance(&state, &ops, &params).map_err(err)?;
    let e0 = traj.samples[0].energy;
    let mut steps = 0;
    for w in traj.samples.windows(2) {
        steps += 1;
        ensure(w[1].energy <= w[0].energy + 1e-10 * e0.abs(), || {
            format!(
                "energy rose at t = {}: {} -> {}",
                w[1].t, w[0].energy, w[1].energy
            )
        })?;
    }

    let sc = unstable_isothermal::<f64>();
    let pu = sc.profile(257).map_err(err)?;
    let mesh = build_mesh(1.0, 1.0, 200, 200).map_err(err)?;
    let pt = growth_rate(&pu, 1.0, &mesh, &sc.params, &SolverOptions::default()).map_err(err)?;
    let mode = assemble_mode(&pt, &pu, &mesh, &sc.params).map_err(err)?;
    let ops = semidiscretize(&pu, &mesh, [1.0, 0.0], &sc.params).map_err(err)?;
    let init = mode_initial_state(&ops, &mode).map_err(err)?;
    let lambda = pt.lambda;
    let up = IntegratorParams {
        dt: 0.01 / lambda,
        t_final: 3.0 / lambda,
        scheme: Scheme::Trapezoidal,
        fit_window: 0.5,
    };
    let traj = advance(&init, &ops, &up).map_err(err)?;
    let rate = measure_energy_growth(&traj, 0.5).map_err(err)?;
    let rel = (rate - 2.0 * lambda).abs() / (2.0 * lambda);
    ensure(rel <= 0.02, || {
        format!("energy rate {rate} vs 2 lambda {}", 2.0 * lambda)
    })?;
    Ok(format!(
        "stable: {steps} non-increasing steps; unstable: energy rate {rate:.6} vs 2 lambda {:.6}",
        2.0 * lambda
    ))
}

fn equivariance() -> Check {
    let sc = unstable_isothermal::<f64>();
    let p = sc.profile(257).map_err(err)?;
    let mesh = build_mesh(1.0, 1.0, 40, 40).map_err(err)?;
    let pt = growth_rate(&p, 1.0, &mesh, &sc.params, &SolverOptions::default()).map_err(err)?;
    let mode = assemble_mode(&pt, &p, &mesh, &sc.params).map_err(err)?;
    let mut worst = 0.0f64;
    for angle in [0.3, 1.1, 2.9, -0.7] {
        let r = rotation(angle);
        let rt = [[r[0][0], r[1][0]], [r[0][1], r[1][1]]];
        let back = rotate_mode(&rotate_mode(&mode, r).map_err(err)?, rt).map_err(err)?;
        for (a, b) in [
            (&back.phi, &mode.phi),
            (&back.theta, &mode.theta),
            (&back.psi, &mode.psi),
        ] {
            for (x, y) in a.iter().zip(b) {
                worst = worst.max((x - y).abs());
            }
        }
    }
    ensure(worst <= 1e-15, || format!("round trip error {worst:e}"))?;

    let mut theta_max = 0.0f64;
    for (k, s) in [(0.5, 0.03), (1.0, 0.07), (2.0, 0.1)] {
        let f3 = assemble_forms_3field(&mesh, &p, [k, 0.0], &sc.params);
        let (_, v) = min_eig(&f3, s).map_err(err)?;
        let theta = mesh.nodal(&v, 1, 3);
        let norm = theta.iter().map(|t| t * t).sum::<f64>().sqrt();
        theta_max = theta_max.max(norm);
        ensure(norm <= 1e-8, || {
            format!("theta norm {norm:e} at |xi| = {k}")
        })?;
    }
    Ok(format!(
        "round trip {worst:.1e}, max theta norm {theta_max:.1e}"
    ))
}

fn regime_table() -> Check {
    use RegimeLabel::*;
    let sc = 2.0;
    let cells: [((f64, f64, f64), RegimeLabel); 12] = [
        ((-1.0, 0.0, 0.0), StableAlmostExponentialDecay),
        ((0.0, 0.0, 0.0), LocallyWellPosed),
        ((1.0, 0.0, 0.0), NonlinearlyUnstable),
        ((-1.0, 1.0, 1.0), StableExponentialDecay),
        ((0.0, 1.0, 1.0), StableExponentialDecay),
        ((1.0, 1.0, 1.0), NonlinearlyUnstable),
        ((-1.0, 1.0, 2.0), StableExponentialDecay),
        ((0.0, 1.0, 2.0), StableExponentialDecay),
        ((1.0, 1.0, 2.0), LocallyWellPosed),
        ((-1.0, 1.0, 3.0), StableExponentialDecay),
        ((0.0, 1.0, 3.0), StableExponentialDecay),
        ((1.0, 1.0, 3.0), StableExponentialDecay),
    ];
    for ((jump, sp, sm), want) in cells {
        let got = classify_regime(jump, sp, sm, sc).map_err(err)?;
        ensure(got == want, || {
            format!("({jump}, {sp}, {sm}): {got} instead of {want}")
        })?;
    }
    Ok("12 cells".into())
}

fn vandermonde_moments() -> Check {
    let mut worst_moment = 0.0f64;
    for m in 0..=6 {
        let params = ExtensionParams::<f64>::with_default_rates(m).map_err(err)?;
        for l in 0..=m {
            let sum: f64 = params
                .lambdas
                .iter()
                .zip(&params.alphas)
                .map(|(&lam, &a)| a * (-lam).powi(l as i32))
                .sum();
            worst_moment = worst_moment.max((sum - 1.0).abs());
            ensure((sum - 1.0).abs() <= 1e-10, || {
                format!("m = {m}, l = {l}: moment {sum}")
            })?;
        }
    }

    let f = PeriodicField::from_fn(32, 16, 1.0, 0.5, |x: f64, y: f64| {
        x.sin() + 0.5 * (2.0 * y).cos() + 0.25 * (3.0 * x + 4.0 * y).sin() + 0.1
    })
    .map_err(err)?;
    let mut worst_trace = 0.0f64;
    let mut worst_match = 0.0f64;
    for m in 0..=6 {
        let params = ExtensionParams::with_default_rates(m).map_err(err)?;
        let ext = extend_interface(&f, &params).map_err(err)?;
        for branch in [&ext.lower, &ext.upper] {
            let trace = branch.evaluate(0.0).map_err(err)?;
            let d = trace.max_abs_diff(&f);
            worst_trace = worst_trace.max(d);
            ensure(d <= 1e-12, || format!("trace error {d:e} at m = {m}"))?;
        }
        for order in 0..=m {
            let lo = ext.lower.derivative(order, 0.0).map_err(err)?;
            let hi = ext.upper.derivative(order, 0.0).map_err(err)?;
            let scale = lo.values.iter().fold(1.0f64, |a, v| a.max(v.abs()));
            let d = lo.max_abs_diff(&hi) / scale;
            worst_match = worst_match.max(d);
            ensure(d <= 1e-10, || {
                format!("derivative {order} mismatch {d:e} at m = {m}")
            })?;
        }
    }
    Ok(format!(
        "moments {worst_moment:.1e}, trace {worst_trace:.1e}, derivative match {worst_match:.1e}"
    ))
}

fn main() -> ExitCode {
    let checks: [Criterion; 13] = [
        (
            "equilibrium exactness",
            equilibrium_exactness,
            Duration::from_secs(1),
        ),
        (
            "test-function norm",
            test_function_norm,
            Duration::from_secs(1),
        ),
        ("energy lower bound", lower_bound, Duration::from_secs(10)),
        ("alpha monotonicity", monotonicity, Duration::from_secs(150)),
        ("growth bound", growth_bound_check, Duration::from_secs(300)),
        (
            "stability threshold",
            stability_threshold,
            Duration::from_secs(300),
        ),
        (
            "eigensolver oracle",
            eigensolver_oracle,
            Duration::from_secs(60),
        ),
        (
            "mesh convergence",
            mesh_convergence,
            Duration::from_secs(120),
        ),
        (
            "time-evolution oracle",
            evolution_oracle,
            Duration::from_secs(60),
        ),
        ("energy identity", energy_identity, Duration::from_secs(120)),
        (
            "equivariance and decoupling",
            equivariance,
            Duration::from_secs(60),
        ),
        ("regime table", regime_table, Duration::from_secs(1)),
        (
            "extension moments",
            vandermonde_moments,
            Duration::from_secs(5),
        ),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in checks.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|m| {
            if elapsed <= *budget {
                Ok(m)
            } else {
                Err(format!("{m}; runtime {elapsed:.2?} exceeds {budget:?}"))
            }
        });
        match result {
            Ok(m) => println!("PASS [{:2}] {name}: {m} ({elapsed:.2?})", i + 1),
            Err(m) => {
                failed += 1;
                println!("FAIL [{:2}] {name}: {m} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        checks.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
