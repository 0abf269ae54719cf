//! Fixed Gauss-Legendre rules.

use crate::scalar::Real;

/// Four-point Gauss-Legendre rule on `[0, 1]` as `(abscissa, weight)` pairs.
pub fn gauss4<T: Real>() -> [(T, T); 4] {
    let s65 = (6.0f64 / 5.0).sqrt();
    let inner = (3.0 / 7.0 - 2.0 / 7.0 * s65).sqrt();
    let outer = (3.0 / 7.0 + 2.0 / 7.0 * s65).sqrt();
    let w_inner = (18.0 + 30f64.sqrt()) / 36.0;
    let w_outer = (18.0 - 30f64.sqrt()) / 36.0;
    let map = |x: f64, w: f64| (T::of(0.5 * (1.0 + x)), T::of(0.5 * w));
    [
        map(-outer, w_outer),
        map(-inner, w_inner),
        map(inner, w_inner),
        map(outer, w_outer),
    ]
}
