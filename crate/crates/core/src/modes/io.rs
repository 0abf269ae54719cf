use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::GrowingMode;

#[derive(Serialize, Deserialize)]
struct Sidecar {
    xi: [f64; 2],
    lambda: f64,
    eta_plus: f64,
    eta_minus: f64,
}

/// JSON sidecar written next to a mode CSV.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

/// Writes `x3,phi,theta,psi,q_tilde` rows with 17 significant digits and a
/// JSON sidecar with `xi`, `lambda`, `eta_plus`, `eta_minus`.
pub fn export_mode(mode: &GrowingMode<f64>, path: &Path) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let write = |w: &mut BufWriter<fs::File>| -> std::io::Result<()> {
        writeln!(w, "x3,phi,theta,psi,q_tilde")?;
        for i in 0..mode.x3.len() {
            writeln!(
                w,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                mode.x3[i], mode.phi[i], mode.theta[i], mode.psi[i], mode.q_tilde[i]
            )?;
        }
        w.flush()
    };
    write(&mut w).map_err(|e| Error::io(path, e))?;

    let side = sidecar_path(path);
    let meta = Sidecar {
        xi: mode.xi,
        lambda: mode.lambda,
        eta_plus: mode.eta_plus,
        eta_minus: mode.eta_minus,
    };
    let text = serde_json::to_string_pretty(&meta).expect("sidecar serializes");
    fs::write(&side, text + "\n").map_err(|e| Error::io(&side, e))
}

/// Reads a mode written by [`export_mode`].
pub fn import_mode(path: &Path) -> Result<GrowingMode<f64>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let parse_err = |message: String| Error::Parse {
        path: path.to_path_buf(),
        message,
    };
    let mut lines = text.lines();
    match lines.next() {
        Some("x3,phi,theta,psi,q_tilde") => {}
        other => return Err(parse_err(format!("unexpected header {other:?}"))),
    }
    let mut cols: [Vec<f64>; 5] = Default::default();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(parse_err(format!(
                "line {}: expected 5 columns",
                lineno + 2
            )));
        }
        for (c, f) in cols.iter_mut().zip(&fields) {
            let v = f
                .trim()
                .parse::<f64>()
                .map_err(|e| parse_err(format!("line {}: {e}", lineno + 2)))?;
            c.push(v);
        }
    }
    let [x3, phi, theta, psi, q_tilde] = cols;
    let interface_row = x3
        .windows(2)
        .position(|w| w[0] == 0.0 && w[1] == 0.0)
        .ok_or_else(|| parse_err("no duplicated interface row at x3 = 0".into()))?;

    let side = sidecar_path(path);
    let meta_text = fs::read_to_string(&side).map_err(|e| Error::io(&side, e))?;
    let meta: Sidecar = serde_json::from_str(&meta_text).map_err(|e| Error::Parse {
        path: side.clone(),
        message: e.to_string(),
    })?;
    Ok(GrowingMode {
        xi: meta.xi,
        lambda: meta.lambda,
        x3,
        phi,
        theta,
        psi,
        q_tilde,
        eta_plus: meta.eta_plus,
        eta_minus: meta.eta_minus,
        interface_row,
    })
}
