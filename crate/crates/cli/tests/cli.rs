use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rtwave"))
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn run(args: &[&str], cfg: &Path, out: &Path) -> Output {
    bin()
        .args(args)
        .arg("--config")
        .arg(cfg)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn classify_unstable() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["classify"],
        &config("unstable_isothermal.json"),
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&dir.path().join("classify.json"));
    assert_eq!(v["regime"], "nonlinearly_unstable");
}

#[test]
fn classify_stable_cases() {
    let dir = tempfile::tempdir().unwrap();
    for (cfg, want) in [
        ("stable_swapped.json", "stable_almost_exponential_decay"),
        ("surface_stabilized.json", "stable_exponential_decay"),
    ] {
        let o = run(&["classify"], &config(cfg), dir.path());
        assert!(o.status.success());
        assert_eq!(json(&dir.path().join("classify.json"))["regime"], want);
    }
}

#[test]
fn zero_epsilon_rounds_to_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("unstable_isothermal.json");
    assert!(run(&["classify"], &cfg, dir.path()).status.success());
    let sigma_c = json(&dir.path().join("classify.json"))["sigma_c"]
        .as_f64()
        .unwrap();
    let mut v = json(&cfg);
    v["surface_tension"]["sigma_plus"] = 1.0.into();
    v["surface_tension"]["sigma_minus"] = (sigma_c + 1e-14).into();
    let path = dir.path().join("edge.json");
    fs::write(&path, v.to_string()).unwrap();
    let o = run(&["classify"], &path, dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        json(&dir.path().join("classify.json"))["regime"],
        "locally_well_posed"
    );
}

#[test]
fn dispersion_above_threshold_is_flat() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["dispersion"],
        &config("surface_stabilized.json"),
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(dir.path().join("dispersion.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("xi1,xi2,xi_abs,lambda,alpha_at_star,iterations,converged")
    );
    let rows: Vec<_> = lines.collect();
    assert!(!rows.is_empty());
    for row in rows {
        let lambda: f64 = row.split(',').nth(3).unwrap().parse().unwrap();
        assert_eq!(lambda, 0.0);
    }
    assert_eq!(json(&dir.path().join("dispersion.json"))["Lambda"], 0.0);
}

#[test]
fn negative_viscosity_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let mut v = json(&config("unstable_isothermal.json"));
    v["fluids"]["minus"]["mu"] = (-1.0).into();
    let path = dir.path().join("bad.json");
    fs::write(&path, v.to_string()).unwrap();
    let o = run(&["classify"], &path, dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("mu_minus"));
}

#[test]
fn malformed_and_missing_config() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{ \"geometry\": ").unwrap();
    assert_eq!(
        run(&["equilibrium"], &path, dir.path()).status.code(),
        Some(2)
    );
    let o = bin()
        .arg("equilibrium")
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_without_mode_needs_time_step() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["oracle", "--xi", "1"],
        &config("stable_swapped.json"),
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn artifacts_are_deterministic() {
    let cfg = config("unstable_isothermal.json");
    let commands: [&[&str]; 5] = [
        &["equilibrium"],
        &["dispersion"],
        &["growth", "--xi", "1"],
        &["mode", "--xi", "1"],
        &["oracle", "--xi", "1"],
    ];
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for args in commands {
        assert!(run(args, &cfg, a.path()).status.success(), "{args:?}");
        let mut threaded = args.to_vec();
        threaded.extend(["--threads", "2"]);
        assert!(run(&threaded, &cfg, b.path()).status.success(), "{args:?}");
    }
    let mut names: Vec<_> = fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert_eq!(names.len(), 8);
    for name in names {
        let x = fs::read(a.path().join(&name)).unwrap();
        let y = fs::read(b.path().join(&name)).unwrap();
        assert_eq!(x, y, "{name:?} differs");
    }
}

#[test]
fn growth_and_oracle_agree() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["oracle", "--xi", "1"],
        &config("unstable_isothermal.json"),
        dir.path(),
    );
    assert!(o.status.success());
    let v = json(&dir.path().join("oracle.json"));
    assert!(v["relative_error"].as_f64().unwrap() < 0.02);
    let csv = fs::read_to_string(dir.path().join("trajectory.csv")).unwrap();
    assert!(csv.starts_with("t,abs_eta_minus,abs_eta_plus,energy,dissipation,balance_residual\n"));
}

#[test]
fn alpha_prints_value() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["alpha", "--xi", "1", "--s", "0.05"],
        &config("unstable_isothermal.json"),
        dir.path(),
    );
    assert!(o.status.success());
    let a: f64 = String::from_utf8(o.stdout).unwrap().trim().parse().unwrap();
    assert!(a < 0.0);
}

#[test]
fn extend_preserves_trace() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("g.csv");
    fs::write(&input, "N1,N2,L1,L2\n2,2,1,1\n1,2\n3,4\n").unwrap();
    let o = bin()
        .args(["extend", "--m", "3", "--x3", "0"])
        .arg("--input")
        .arg(&input)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(dir.path().join("extension.csv")).unwrap();
    let vals: Vec<f64> = text
        .lines()
        .skip(2)
        .flat_map(|l| {
            l.split(',')
                .map(|v| v.parse::<f64>().unwrap())
                .collect::<Vec<_>>()
        })
        .collect();
    for (got, want) in vals.iter().zip([1.0, 2.0, 3.0, 4.0]) {
        assert!((got - want).abs() < 1e-12);
    }
}
