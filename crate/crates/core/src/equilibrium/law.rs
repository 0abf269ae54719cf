use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Barotropic pressure law `P(rho)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[serde(bound(
    serialize = "T: Real + Serialize",
    deserialize = "T: Real + Deserialize<'de>"
))]
pub enum PressureLaw<T> {
    /// `P = K rho`
    Isothermal {
        #[serde(rename = "K")]
        k: T,
    },
    /// `P = K rho^gamma`, `gamma >= 1`
    Polytropic {
        #[serde(rename = "K")]
        k: T,
        gamma: T,
    },
    /// Monotone cubic interpolation through `(rho_i, p_i)` knots.
    Tabulated(TabulatedLaw<T>),
}

/// Discriminant of [`PressureLaw`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LawKind {
    Isothermal,
    Polytropic,
    Tabulated,
}

impl<T: Real> PressureLaw<T> {
    pub fn isothermal(k: T) -> Self {
        Self::Isothermal { k }
    }

    pub fn polytropic(k: T, gamma: T) -> Self {
        Self::Polytropic { k, gamma }
    }

    pub fn kind(&self) -> LawKind {
        match self {
            Self::Isothermal { .. } => LawKind::Isothermal,
            Self::Polytropic { .. } => LawKind::Polytropic,
            Self::Tabulated(_) => LawKind::Tabulated,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Isothermal { k } => {
                if !(*k > T::zero()) || !k.is_finite() {
                    return Err(Error::InvalidInput(format!(
                        "isothermal constant K = {k} must be positive"
                    )));
                }
            }
            Self::Polytropic { k, gamma } => {
                if !(*k > T::zero()) || !k.is_finite() {
                    return Err(Error::InvalidInput(format!(
                        "polytropic constant K = {k} must be positive"
                    )));
                }
                if !(*gamma >= T::one()) || !gamma.is_finite() {
                    return Err(Error::InvalidInput(format!(
                        "polytropic exponent gamma = {gamma} must be >= 1"
                    )));
                }
            }
            Self::Tabulated(t) => t.verify_monotone()?,
        }
        Ok(())
    }

    pub fn pressure(&self, rho: T) -> T {
        match self {
            Self::Isothermal { k } => *k * rho,
            Self::Polytropic { k, gamma } => *k * rho.powf(*gamma),
            Self::Tabulated(t) => t.eval(rho).0,
        }
    }

    /// `P'(rho)`
    pub fn dpressure(&self, rho: T) -> T {
        match self {
            Self::Isothermal { k } => *k,
            Self::Polytropic { k, gamma } => *k * *gamma * rho.powf(*gamma - T::one()),
            Self::Tabulated(t) => t.eval(rho).1,
        }
    }

    /// `P''(rho)`
    pub fn d2pressure(&self, rho: T) -> T {
        match self {
            Self::Isothermal { .. } => T::zero(),
            Self::Polytropic { k, gamma } => {
                *k * *gamma * (*gamma - T::one()) * rho.powf(*gamma - T::of(2.0))
            }
            Self::Tabulated(t) => t.eval(rho).2,
        }
    }

    /// `P^{-1}(p)`.
    pub fn inverse(&self, p: T) -> Result<T> {
        let fail = || Error::InverseFailure { pressure: p.f64() };
        if !(p > T::zero()) || !p.is_finite() {
            return Err(fail());
        }
        match self {
            Self::Isothermal { k } => Ok(p / *k),
            Self::Polytropic { k, gamma } => Ok((p / *k).powf(T::one() / *gamma)),
            Self::Tabulated(t) => t.inverse(p).ok_or_else(fail),
        }
    }

    /// Enthalpy weight `h'(rho) = P'(rho) / rho`.
    pub fn enthalpy_weight(&self, rho: T) -> T {
        self.dpressure(rho) / rho
    }

    /// `h''(rho) = (rho P'' - P') / rho^2`.
    pub fn enthalpy_weight_derivative(&self, rho: T) -> T {
        (rho * self.d2pressure(rho) - self.dpressure(rho)) / (rho * rho)
    }
}

/// Tabulated law through strictly increasing knots, interpolated with the
/// Fritsch-Carlson monotone cubic (PCHIP) slopes. Linear extrapolation is
/// used outside the table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TableSpec<T>", into = "TableSpec<T>")]
#[serde(bound(
    serialize = "T: Real + Serialize",
    deserialize = "T: Real + Deserialize<'de>"
))]
pub struct TabulatedLaw<T> {
    rho: Vec<T>,
    p: Vec<T>,
    slopes: Vec<T>,
}

#[derive(Clone, Serialize, Deserialize)]
struct TableSpec<T> {
    rho: Vec<T>,
    p: Vec<T>,
}

impl<T: Real> TryFrom<TableSpec<T>> for TabulatedLaw<T> {
    type Error = Error;
    fn try_from(s: TableSpec<T>) -> Result<Self> {
        TabulatedLaw::new(s.rho, s.p)
    }
}

impl<T: Real> From<TabulatedLaw<T>> for TableSpec<T> {
    fn from(t: TabulatedLaw<T>) -> Self {
        TableSpec { rho: t.rho, p: t.p }
    }
}

impl<T: Real> TabulatedLaw<T> {
    pub fn new(rho: Vec<T>, p: Vec<T>) -> Result<Self> {
        if rho.len() != p.len() || rho.len() < 2 {
            return Err(Error::InvalidInput(
                "tabulated law needs matching rho/p columns with at least two knots".into(),
            ));
        }
        if !(rho[0] > T::zero()) || !(p[0] > T::zero()) {
            return Err(Error::InvalidInput(
                "tabulated law knots must be positive".into(),
            ));
        }
        for w in 0..rho.len() - 1 {
            if !(rho[w + 1] > rho[w]) || !(p[w + 1] > p[w]) {
                return Err(Error::InvalidInput(format!(
                    "tabulated law must be strictly increasing (knot {})",
                    w + 1
                )));
            }
        }
        let n = rho.len();
        let h: Vec<T> = (0..n - 1).map(|i| rho[i + 1] - rho[i]).collect();
        let delta: Vec<T> = (0..n - 1).map(|i| (p[i + 1] - p[i]) / h[i]).collect();
        let mut slopes = vec![T::zero(); n];
        slopes[0] = delta[0];
        slopes[n - 1] = delta[n - 2];
        for i in 1..n - 1 {
            // weighted harmonic mean keeps the interpolant monotone
            let w1 = T::of(2.0) * h[i] + h[i - 1];
            let w2 = h[i] + T::of(2.0) * h[i - 1];
            slopes[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
        let law = Self { rho, p, slopes };
        law.verify_monotone()?;
        Ok(law)
    }

    pub fn knots(&self) -> (&[T], &[T]) {
        (&self.rho, &self.p)
    }

    /// Checks `P' > 0` on a dense sampling of every interval.
    pub fn verify_monotone(&self) -> Result<()> {
        const PER_INTERVAL: usize = 16;
        for i in 0..self.rho.len() - 1 {
            for k in 0..=PER_INTERVAL {
                let r = self.rho[i]
                    + (self.rho[i + 1] - self.rho[i]) * T::of_usize(k) / T::of_usize(PER_INTERVAL);
                let dp = self.eval(r).1;
                if !(dp > T::zero()) {
                    return Err(Error::DegeneratePressure {
                        x3: f64::NAN,
                        rho: r.f64(),
                        dp: dp.f64(),
                    });
                }
            }
        }
        Ok(())
    }

    fn interval(&self, rho: T) -> usize {
        let n = self.rho.len();
        self.rho.partition_point(|&r| r <= rho).clamp(1, n - 1) - 1
    }

    /// `(P, P', P'')` at `rho`.
    fn eval(&self, rho: T) -> (T, T, T) {
        let n = self.rho.len();
        if rho < self.rho[0] {
            return (
                self.p[0] + self.slopes[0] * (rho - self.rho[0]),
                self.slopes[0],
                T::zero(),
            );
        }
        if rho > self.rho[n - 1] {
            return (
                self.p[n - 1] + self.slopes[n - 1] * (rho - self.rho[n - 1]),
                self.slopes[n - 1],
                T::zero(),
            );
        }
        let i = self.interval(rho);
        let h = self.rho[i + 1] - self.rho[i];
        let t = (rho - self.rho[i]) / h;
        let (p0, p1, m0, m1) = (
            self.p[i],
            self.p[i + 1],
            self.slopes[i] * h,
            self.slopes[i + 1] * h,
        );
        let two = T::of(2.0);
        let three = T::of(3.0);
        let six = T::of(6.0);
        let t2 = t * t;
        let t3 = t2 * t;
        let val = (two * t3 - three * t2 + T::one()) * p0
            + (t3 - two * t2 + t) * m0
            + (three * t2 - two * t3) * p1
            + (t3 - t2) * m1;
        let d = (six * t2 - six * t) * p0
            + (three * t2 - T::of(4.0) * t + T::one()) * m0
            + (six * t - six * t2) * p1
            + (three * t2 - two * t) * m1;
        let dd = (T::of(12.0) * t - six) * p0
            + (six * t - T::of(4.0)) * m0
            + (six - T::of(12.0) * t) * p1
            + (six * t - two) * m1;
        (val, d / h, dd / (h * h))
    }

    fn inverse(&self, p: T) -> Option<T> {
        let n = self.p.len();
        if p < self.p[0] || p > self.p[n - 1] {
            return None;
        }
        let i = self.p.partition_point(|&q| q <= p).clamp(1, n - 1) - 1;
        let (mut lo, mut hi) = (self.rho[i], self.rho[i + 1]);
        let mut x = lo + (hi - lo) * (p - self.p[i]) / (self.p[i + 1] - self.p[i]);
        for _ in 0..200 {
            let (v, dv, _) = self.eval(x);
            let r = v - p;
            if r.abs() <= T::epsilon() * p.abs() {
                return Some(x);
            }
            if r > T::zero() {
                hi = x;
            } else {
                lo = x;
            }
            let newton = x - r / dv;
            x = if newton > lo && newton < hi {
                newton
            } else {
                (lo + hi) / T::of(2.0)
            };
            if hi - lo <= T::epsilon() * hi {
                return Some(x);
            }
        }
        Some(x)
    }
}
