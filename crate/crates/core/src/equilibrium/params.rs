use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Geometry, gravity, viscosities and surface tensions of the two-layer slab.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams<T> {
    /// Depth of the lower layer, occupying `(-b, 0)`.
    pub b: T,
    /// Depth of the upper layer, occupying `(0, ell)`.
    pub ell: T,
    /// Horizontal periods are `2 pi L1` and `2 pi L2`.
    pub l1: T,
    pub l2: T,
    pub g: T,
    pub p_atm: T,
    pub mu_plus: T,
    pub mu_minus: T,
    pub mu_prime_plus: T,
    pub mu_prime_minus: T,
    pub sigma_plus: T,
    pub sigma_minus: T,
}

impl<T: Real> PhysicalParams<T> {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("b", self.b),
            ("ell", self.ell),
            ("L1", self.l1),
            ("L2", self.l2),
            ("g", self.g),
            ("p_atm", self.p_atm),
            ("mu_plus", self.mu_plus),
            ("mu_minus", self.mu_minus),
        ];
        for (name, v) in positive {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "{name} = {v} must be positive"
                )));
            }
        }
        let nonneg = [
            ("mu_prime_plus", self.mu_prime_plus),
            ("mu_prime_minus", self.mu_prime_minus),
            ("sigma_plus", self.sigma_plus),
            ("sigma_minus", self.sigma_minus),
        ];
        for (name, v) in nonneg {
            if !(v >= T::zero()) || !v.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "{name} = {v} must be non-negative"
                )));
            }
        }
        Ok(())
    }

    pub fn mu(&self, layer: Layer) -> T {
        match layer {
            Layer::Upper => self.mu_plus,
            Layer::Lower => self.mu_minus,
        }
    }

    pub fn mu_prime(&self, layer: Layer) -> T {
        match layer {
            Layer::Upper => self.mu_prime_plus,
            Layer::Lower => self.mu_prime_minus,
        }
    }

    /// Area of the periodic cell, `(2 pi)^2 L1 L2`.
    pub fn cell_area(&self) -> T {
        let two_pi = T::PI() + T::PI();
        two_pi * two_pi * self.l1 * self.l2
    }
}

/// One of the two fluid layers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Layer {
    /// `(-b, 0)`
    Lower,
    /// `(0, ell)`
    Upper,
}

impl Layer {
    /// Layer owning `x3`; the interface `x3 = 0` is assigned to the upper layer.
    pub fn of<T: Real>(x3: T) -> Self {
        if x3 >= T::zero() {
            Layer::Upper
        } else {
            Layer::Lower
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Layer::Lower => "lower",
            Layer::Upper => "upper",
        }
    }
}
