//! Scalar abstractions.
//!
//! Everything numeric in the crate is written against [`Real`], which is
//! implemented for `f32` and `f64`. Linear solvers that also run on complex
//! Fourier coefficients use [`Field`], implemented for the two real types and
//! their `Complex` counterparts.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Default
    + Debug
    + Display
    + LowerExp
    + Sum
    + Send
    + Sync
    + 'static
    + Field<Real = Self>
{
    /// Converts an `f64` literal into this type.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Converts a count into this type.
    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    #[inline]
    fn f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Scalar usable inside the dense and banded linear solvers.
pub trait Field:
    Copy + NumAssign + std::ops::Neg<Output = Self> + Debug + Send + Sync + 'static
{
    type Real: Real;

    fn modulus(self) -> Self::Real;
    fn conj(self) -> Self;
    fn from_real(r: Self::Real) -> Self;
}

macro_rules! real_field {
    ($t:ty) => {
        impl Field for $t {
            type Real = $t;
            #[inline]
            fn modulus(self) -> $t {
                self.abs()
            }
            #[inline]
            fn conj(self) -> $t {
                self
            }
            #[inline]
            fn from_real(r: $t) -> $t {
                r
            }
        }
    };
}

real_field!(f32);
real_field!(f64);

impl<T: Real> Field for Complex<T> {
    type Real = T;
    #[inline]
    fn modulus(self) -> T {
        self.norm()
    }
    #[inline]
    fn conj(self) -> Self {
        Complex::conj(&self)
    }
    #[inline]
    fn from_real(r: T) -> Self {
        Complex::new(r, T::zero())
    }
}
