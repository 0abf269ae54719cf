//! Harmonic-type extensions of periodic surface functions into the lower and
//! upper slabs.
//!
//! A field on the torus `(2 pi L1) x (2 pi L2)` is expanded as
//! `sum_k c_k e^{i xi_k . x'}` with `xi_k = (k1 / L1, k2 / L2)`. Downward
//! extension to level `j` multiplies each coefficient by `e^{|xi| (x3 - j)}`;
//! the specialized upward extension uses `sum_j alpha_j e^{-|xi| lambda_j x3}`,
//! where the weights make the first `m` vertical derivatives match across
//! `x3 = 0`.

use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use num_complex::Complex;
use rustfft::{FftNum, FftPlanner};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Real samples on a uniform `n1 x n2` grid, stored row-major (`i1` slow).
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicField<T> {
    pub n1: usize,
    pub n2: usize,
    pub l1: T,
    pub l2: T,
    pub values: Vec<T>,
}

impl<T: Real> PeriodicField<T> {
    pub fn new(n1: usize, n2: usize, l1: T, l2: T, values: Vec<T>) -> Result<Self> {
        let f = Self {
            n1,
            n2,
            l1,
            l2,
            values,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn from_fn(n1: usize, n2: usize, l1: T, l2: T, f: impl Fn(T, T) -> T) -> Result<Self> {
        let mut values = Vec::with_capacity(n1 * n2);
        let two_pi = T::PI() + T::PI();
        for i in 0..n1 {
            for j in 0..n2 {
                let x1 = two_pi * l1 * T::of_usize(i) / T::of_usize(n1);
                let x2 = two_pi * l2 * T::of_usize(j) / T::of_usize(n2);
                values.push(f(x1, x2));
            }
        }
        Self::new(n1, n2, l1, l2, values)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n1 < 2 || self.n2 < 2 {
            return Err(Error::InvalidInput(format!(
                "grid needs at least 2 x 2 points, got {} x {}",
                self.n1, self.n2
            )));
        }
        if !(self.l1 > T::zero() && self.l2 > T::zero()) {
            return Err(Error::InvalidInput("periods must be positive".into()));
        }
        if self.values.len() != self.n1 * self.n2 {
            return Err(Error::InvalidInput(format!(
                "expected {} samples, got {}",
                self.n1 * self.n2,
                self.values.len()
            )));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("field has non-finite samples".into()));
        }
        Ok(())
    }

    pub fn get(&self, i1: usize, i2: usize) -> T {
        self.values[i1 * self.n2 + i2]
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.values
            .iter()
            .zip(&other.values)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()))
    }

    /// `|xi|` for grid index `(k1, k2)` of the discrete spectrum.
    fn frequency(&self, k1: usize, k2: usize) -> T {
        let signed = |k: usize, n: usize| {
            if 2 * k <= n {
                T::of_usize(k)
            } else {
                -T::of_usize(n - k)
            }
        };
        (signed(k1, self.n1) / self.l1).hypot(signed(k2, self.n2) / self.l2)
    }
}

fn fft2<T: Real + FftNum>(data: &mut [Complex<T>], n1: usize, n2: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let (f1, f2) = if inverse {
        (planner.plan_fft_inverse(n1), planner.plan_fft_inverse(n2))
    } else {
        (planner.plan_fft_forward(n1), planner.plan_fft_forward(n2))
    };
    for row in data.chunks_mut(n2) {
        f2.process(row);
    }
    let mut col = vec![Complex::new(T::zero(), T::zero()); n1];
    for j in 0..n2 {
        for i in 0..n1 {
            col[i] = data[i * n2 + j];
        }
        f1.process(&mut col);
        for i in 0..n1 {
            data[i * n2 + j] = col[i];
        }
    }
}

/// Matching order and decay rates of the upward extension with their
/// weights.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionParams<T> {
    pub m: usize,
    pub lambdas: Vec<T>,
    pub alphas: Vec<T>,
}

impl<T: Real> ExtensionParams<T> {
    /// Rates `lambda_j = j + 1`, an arbitrary admissible choice.
    pub fn with_default_rates(m: usize) -> Result<Self> {
        vandermonde_coeffs(&(0..=m).map(|j| T::of_usize(j + 1)).collect::<Vec<_>>())
    }

    /// `max_l |sum_j alpha_j (-lambda_j)^l - 1|` over `0 <= l <= m`.
    pub fn moment_residual(&self) -> T {
        moment_residual(&self.lambdas, &self.alphas, self.m)
    }

    pub fn validate(&self) -> Result<()> {
        check_rates(&self.lambdas)?;
        if self.lambdas.len() != self.m + 1 || self.alphas.len() != self.m + 1 {
            return Err(Error::InvalidInput("need m + 1 rates and weights".into()));
        }
        let r = self.moment_residual();
        if !(r <= T::of(1e-10)) {
            return Err(Error::InvalidInput(format!(
                "moment conditions violated by {r:e}"
            )));
        }
        Ok(())
    }
}

fn check_rates<T: Real>(lambdas: &[T]) -> Result<()> {
    if lambdas.is_empty() {
        return Err(Error::InvalidInput("at least one rate is required".into()));
    }
    if !(lambdas[0] > T::zero()) || lambdas.iter().any(|l| !l.is_finite()) {
        return Err(Error::InvalidInput(
            "rates must be positive and finite".into(),
        ));
    }
    if lambdas.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidInput(
            "rates must be strictly increasing".into(),
        ));
    }
    Ok(())
}

fn moment_residual<T: Real>(lambdas: &[T], alphas: &[T], m: usize) -> T {
    (0..=m)
        .map(|l| {
            let s = lambdas
                .iter()
                .zip(alphas)
                .fold(T::zero(), |acc, (&lam, &a)| acc + a * (-lam).powi(l as i32));
            (s - T::one()).abs()
        })
        .fold(T::zero(), T::max)
}

/// Weights with `sum_j alpha_j (-lambda_j)^l = 1` for `0 <= l <= m`, where
/// `m + 1` is the number of rates.
///
/// The moment conditions say `sum_j alpha_j p(-lambda_j) = p(1)` for every
/// polynomial of degree `<= m`, so `alpha_j` is the Lagrange basis
/// polynomial of node `-lambda_j` evaluated at 1. This product form is
/// accurate to a few ulps where elimination on the Vandermonde matrix loses
/// digits to the growth of its rows.
pub fn vandermonde_coeffs<T: Real>(lambdas: &[T]) -> Result<ExtensionParams<T>> {
    check_rates(lambdas)?;
    let n = lambdas.len();
    // one division per weight keeps integer rates exact
    let alphas: Vec<T> = (0..n)
        .map(|j| {
            let (num, den) = (0..n)
                .filter(|&i| i != j)
                .fold((T::one(), T::one()), |(a, b), i| {
                    (a * (T::one() + lambdas[i]), b * (lambdas[i] - lambdas[j]))
                });
            num / den
        })
        .collect();
    let residual = moment_residual(lambdas, &alphas, n - 1);
    if !(residual <= T::of(1e-8)) {
        return Err(Error::IllConditioned {
            residual: residual.f64(),
        });
    }
    Ok(ExtensionParams {
        m: n - 1,
        lambdas: lambdas.to_vec(),
        alphas,
    })
}

#[derive(Clone, Debug, PartialEq)]
enum Kind<T> {
    Down { level: T },
    Up { lambdas: Vec<T>, alphas: Vec<T> },
}

/// One-sided extension evaluated on the horizontal grid of its input.
#[derive(Clone, Debug)]
pub struct Extension<T> {
    kind: Kind<T>,
    shape: PeriodicField<T>,
    /// Discrete Fourier coefficients `c_k` (unnormalized transform / N).
    spectrum: Vec<Complex<T>>,
}

impl<T: Real + FftNum> Extension<T> {
    fn new(f: &PeriodicField<T>, kind: Kind<T>) -> Result<Self> {
        f.validate()?;
        let mut spectrum: Vec<Complex<T>> = f
            .values
            .iter()
            .map(|&v| Complex::new(v, T::zero()))
            .collect();
        fft2(&mut spectrum, f.n1, f.n2, false);
        let scale = T::one() / T::of_usize(f.n1 * f.n2);
        for c in spectrum.iter_mut() {
            *c *= scale;
        }
        Ok(Self {
            kind,
            shape: PeriodicField {
                values: Vec::new(),
                ..f.clone()
            },
            spectrum,
        })
    }

    /// Height range where this extension is defined.
    pub fn domain(&self) -> (T, T) {
        match &self.kind {
            Kind::Down { level } => (T::neg_infinity(), *level),
            Kind::Up { .. } => (T::zero(), T::infinity()),
        }
    }

    /// `d^order/dx3^order` of the vertical multiplier at frequency `k`.
    pub fn multiplier(&self, k: T, x3: T, order: usize) -> T {
        match &self.kind {
            Kind::Down { level } => k.powi(order as i32) * (k * (x3 - *level)).exp(),
            Kind::Up { lambdas, alphas } => {
                lambdas.iter().zip(alphas).fold(T::zero(), |acc, (&l, &a)| {
                    acc + a * (-k * l).powi(order as i32) * (-k * l * x3).exp()
                })
            }
        }
    }

    /// Vertical derivative of the given order on the horizontal grid at
    /// height `x3`; order zero is the extension itself.
    pub fn derivative(&self, order: usize, x3: T) -> Result<PeriodicField<T>> {
        let (lo, hi) = self.domain();
        if !(x3 >= lo && x3 <= hi) {
            return Err(Error::Domain {
                x3: x3.f64(),
                lo: lo.f64(),
                hi: hi.f64(),
            });
        }
        let (n1, n2) = (self.shape.n1, self.shape.n2);
        let mut data = self.spectrum.clone();
        for k1 in 0..n1 {
            for k2 in 0..n2 {
                let k = self.shape.frequency(k1, k2);
                data[k1 * n2 + k2] *= self.multiplier(k, x3, order);
            }
        }
        fft2(&mut data, n1, n2, true);
        Ok(PeriodicField {
            values: data.into_iter().map(|c| c.re).collect(),
            ..self.shape.clone()
        })
    }

    pub fn evaluate(&self, x3: T) -> Result<PeriodicField<T>> {
        self.derivative(0, x3)
    }
}

/// Extension below the level `x3 = level`.
pub fn extend_down<T: Real + FftNum>(f: &PeriodicField<T>, level: T) -> Result<Extension<T>> {
    if !level.is_finite() {
        return Err(Error::InvalidInput("extension level must be finite".into()));
    }
    Extension::new(f, Kind::Down { level })
}

/// Specialized extension above `x3 = 0`.
pub fn extend_up_specialized<T: Real + FftNum>(
    f: &PeriodicField<T>,
    params: &ExtensionParams<T>,
) -> Result<Extension<T>> {
    params.validate()?;
    Extension::new(
        f,
        Kind::Up {
            lambdas: params.lambdas.clone(),
            alphas: params.alphas.clone(),
        },
    )
}

/// Two-sided extension of an interface function: downward to level zero
/// below, specialized upward above.
#[derive(Clone, Debug)]
pub struct InterfaceExtension<T> {
    pub lower: Extension<T>,
    pub upper: Extension<T>,
}

impl<T: Real + FftNum> InterfaceExtension<T> {
    /// Uses the lower branch for `x3 <= 0`.
    pub fn derivative(&self, order: usize, x3: T) -> Result<PeriodicField<T>> {
        if x3 <= T::zero() {
            self.lower.derivative(order, x3)
        } else {
            self.upper.derivative(order, x3)
        }
    }

    pub fn evaluate(&self, x3: T) -> Result<PeriodicField<T>> {
        self.derivative(0, x3)
    }
}

pub fn extend_interface<T: Real + FftNum>(
    f: &PeriodicField<T>,
    params: &ExtensionParams<T>,
) -> Result<InterfaceExtension<T>> {
    Ok(InterfaceExtension {
        lower: extend_down(f, T::zero())?,
        upper: extend_up_specialized(f, params)?,
    })
}

/// Writes `N1,N2,L1,L2` and its values, then one line of `N2` samples per
/// `i1`.
pub fn write_grid_csv<T: Real>(f: &PeriodicField<T>, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = std::io::BufWriter::new(file);
    let mut body = || -> std::io::Result<()> {
        writeln!(w, "N1,N2,L1,L2")?;
        writeln!(
            w,
            "{},{},{:.16e},{:.16e}",
            f.n1,
            f.n2,
            f.l1.f64(),
            f.l2.f64()
        )?;
        for row in f.values.chunks(f.n2) {
            let line: Vec<String> = row.iter().map(|v| format!("{:.16e}", v.f64())).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        w.flush()
    };
    body().map_err(|e| Error::io(path, e))
}

pub fn read_grid_csv<T: Real>(path: &Path) -> Result<PeriodicField<T>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let parse_err = |message: String| Error::Parse {
        path: path.to_path_buf(),
        message,
    };
    let mut lines = BufReader::new(file).lines();
    let mut next = |what: &str| -> Result<String> {
        match lines.next() {
            Some(Ok(l)) => Ok(l),
            Some(Err(e)) => Err(Error::io(path, e)),
            None => Err(parse_err(format!("missing {what}"))),
        }
    };
    let header = next("header")?;
    if header.trim() != "N1,N2,L1,L2" {
        return Err(parse_err(format!("unexpected header {header:?}")));
    }
    let dims = next("grid description")?;
    let parts: Vec<&str> = dims.trim().split(',').collect();
    if parts.len() != 4 {
        return Err(parse_err("grid description needs four entries".into()));
    }
    let n1: usize = parts[0]
        .trim()
        .parse()
        .map_err(|e| parse_err(format!("N1: {e}")))?;
    let n2: usize = parts[1]
        .trim()
        .parse()
        .map_err(|e| parse_err(format!("N2: {e}")))?;
    let l1: f64 = parts[2]
        .trim()
        .parse()
        .map_err(|e| parse_err(format!("L1: {e}")))?;
    let l2: f64 = parts[3]
        .trim()
        .parse()
        .map_err(|e| parse_err(format!("L2: {e}")))?;
    let mut values = Vec::with_capacity(n1 * n2);
    for i in 0..n1 {
        let line = next(&format!("row {i}"))?;
        let row: Vec<f64> = line
            .trim()
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| parse_err(format!("row {i}: {e}")))?;
        if row.len() != n2 {
            return Err(parse_err(format!(
                "row {i} has {} entries, expected {n2}",
                row.len()
            )));
        }
        values.extend(row.into_iter().map(T::of));
    }
    PeriodicField::new(n1, n2, T::of(l1), T::of(l2), values)
}
