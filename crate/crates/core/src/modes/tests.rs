use super::*;
use crate::dispersion::{growth_rate, SolverOptions};
use crate::scenarios::unstable_isothermal;
use crate::variational::build_mesh;

fn mode(
    n: usize,
) -> (
    GrowingMode<f64>,
    EquilibriumProfile<f64>,
    Mesh1D<f64>,
    PhysicalParams<f64>,
) {
    let sc = unstable_isothermal::<f64>();
    let p = sc.profile(257).unwrap();
    let mesh = build_mesh(1.0, 1.0, n, n).unwrap();
    let pt = growth_rate(&p, 1.0, &mesh, &sc.params, &SolverOptions::default()).unwrap();
    let m = assemble_mode(&pt, &p, &mesh, &sc.params).unwrap();
    (m, p, mesh, sc.params)
}

#[test]
fn normalization_and_kinematics() {
    let (m, _, mesh, params) = mode(30);
    assert!((m.eta_minus_norm(&params) - 1.0).abs() < 1e-14);
    assert!(m.eta_minus > 0.0);
    let i = m.interface_row;
    assert!((m.lambda * m.eta_minus - m.psi[i]).abs() < 1e-15);
    assert!((m.lambda * m.eta_plus - m.psi[m.x3.len() - 1]).abs() < 1e-15);
    assert_eq!(m.x3.len(), mesh.n_nodes() + 1);
    assert_eq!(m.x3[i], 0.0);
    assert_eq!(m.x3[i + 1], 0.0);
    assert!(m.theta.iter().all(|&t| t == 0.0));
    assert_eq!(m.xi, [1.0, 0.0]);
}

#[test]
fn continuity_identity_at_quadrature_points() {
    let (m, p, mesh, _) = mode(30);
    assert!(continuity_residual(&m, &p, &mesh) < 1e-10);
}

#[test]
fn degenerate_and_stable_points_rejected() {
    let sc = unstable_isothermal::<f64>();
    let p = sc.profile(257).unwrap();
    let mesh = build_mesh(1.0, 1.0, 8, 8).unwrap();
    let mut pt = growth_rate(&p, 1.0, &mesh, &sc.params, &SolverOptions::default()).unwrap();
    let iface = mesh.dof(mesh.interface_node(), 1, 2).unwrap();
    pt.minimizer[iface] = 0.0;
    assert!(matches!(
        assemble_mode(&pt, &p, &mesh, &sc.params),
        Err(Error::DegenerateMode { .. })
    ));
    pt.lambda = 0.0;
    assert!(matches!(
        assemble_mode(&pt, &p, &mesh, &sc.params),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn rotations() {
    let (m, _, _, _) = mode(10);
    assert_eq!(rotate_mode(&m, [[1.0, 0.0], [0.0, 1.0]]).unwrap(), m);
    let q = rotate_mode(&m, [[0.0, -1.0], [1.0, 0.0]]).unwrap();
    assert_eq!(q.xi, [0.0, 1.0]);
    assert!(q.phi.iter().all(|&v| v == 0.0));
    assert_eq!(q.theta, m.phi);
    assert_eq!(q.psi, m.psi);
    let r = rotation(0.83);
    let rt = [[r[0][0], r[1][0]], [r[0][1], r[1][1]]];
    let back = rotate_mode(&rotate_mode(&m, r).unwrap(), rt).unwrap();
    for (a, b) in back.phi.iter().zip(&m.phi) {
        assert!((a - b).abs() <= 1e-15);
    }
    for (a, b) in back.theta.iter().zip(&m.theta) {
        assert!((a - b).abs() <= 1e-15);
    }
    assert!(matches!(
        rotate_mode(&m, [[1.0, 0.0], [0.0, -1.0]]),
        Err(Error::NotARotation { .. })
    ));
    assert!(rotate_mode(&m, [[1.0, 1e-9], [0.0, 1.0]]).is_err());
}

#[test]
fn residuals_shrink_under_refinement() {
    let mut prev: Option<(f64, f64)> = None;
    for n in [25, 50, 100] {
        let (m, p, _, params) = mode(n);
        let r = ode_residual(&m, &p, &params);
        assert_eq!(r.bottom_phi, 0.0);
        assert_eq!(r.bottom_psi, 0.0);
        assert_eq!(r.theta, 0.0);
        assert_eq!(r.interface_continuity, 0.0);
        let bulk = r.phi_interior.max(r.psi_interior);
        let bdry = r
            .top_shear
            .max(r.top_normal)
            .max(r.interface_shear)
            .max(r.interface_normal);
        if let Some((pb, pd)) = prev {
            assert!((pb / bulk).log2() >= 0.9, "bulk {pb} -> {bulk}");
            assert!((pd / bdry).log2() >= 0.9, "boundary {pd} -> {bdry}");
        }
        prev = Some((bulk, bdry));
    }
}

#[test]
fn residual_invariant_under_rotation() {
    let (m, p, _, params) = mode(20);
    let r0 = ode_residual(&m, &p, &params);
    let r1 = ode_residual(&rotate_mode(&m, rotation(1.1)).unwrap(), &p, &params);
    assert!((r0.psi_interior - r1.psi_interior).abs() < 1e-9 * r0.psi_interior.max(1.0));
    assert!(r1.theta < 1e-14);
}

#[test]
fn zero_mode_has_zero_residual() {
    let (mut m, p, _, params) = mode(8);
    for v in [&mut m.phi, &mut m.psi, &mut m.q_tilde] {
        v.iter_mut().for_each(|x| *x = 0.0);
    }
    assert_eq!(ode_residual(&m, &p, &params).max(), 0.0);
}

#[test]
fn export_import_round_trip() {
    let (m, _, _, _) = mode(10);
    let m = rotate_mode(&m, rotation(0.4)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mode.csv");
    export_mode(&m, &path).unwrap();
    let back = import_mode(&path).unwrap();
    assert_eq!(back, m);
    let side = std::fs::read_to_string(sidecar_path(&path)).unwrap();
    let v: serde_json::Value = serde_json::from_str(&side).unwrap();
    assert_eq!(v["xi"][0].as_f64().unwrap(), m.xi[0]);
    assert_eq!(v["xi"][1].as_f64().unwrap(), m.xi[1]);

    let bad = dir.path().join("missing").join("mode.csv");
    match export_mode(&m, &bad) {
        Err(Error::Io { path, .. }) => assert_eq!(path, bad),
        other => panic!("{other:?}"),
    }
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]
    #[test]
    fn rotation_round_trip(angle in -7.0..7.0f64) {
        let (m, _, _, _) = mode(8);
        let r = rotation(angle);
        let rt = [[r[0][0], r[1][0]], [r[0][1], r[1][1]]];
        let rotated = rotate_mode(&m, r).unwrap();
        proptest::prop_assert!((rotated.xi_abs() - m.xi_abs()).abs() < 1e-15);
        let back = rotate_mode(&rotated, rt).unwrap();
        for (a, b) in back.phi.iter().zip(&m.phi).chain(back.theta.iter().zip(&m.theta)) {
            proptest::prop_assert!((a - b).abs() <= 1e-15);
        }
        proptest::prop_assert_eq!(&back.psi, &m.psi);
    }
}
