use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::FromPrimitive;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// All lattice frequencies sharing one value of `|xi|`.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeShell<T> {
    /// Representative frequency `(m / L1, n / L2)`.
    pub xi: [T; 2],
    pub indices: (i64, i64),
    pub xi_abs: T,
    /// Number of lattice points with this `|xi|`.
    pub multiplicity: usize,
}

fn exact(x: f64) -> Result<BigRational> {
    BigRational::from_f64(x)
        .ok_or_else(|| Error::InvalidInput(format!("{x} has no exact rational value")))
}

/// Distinct shells of `L1^-1 Z x L2^-1 Z` with `0 < |xi| < upper`, ascending.
///
/// Shells are identified by the exact rational value of
/// `|xi|^2 = (m / L1)^2 + (n / L2)^2` computed from the binary values of the
/// periods, so rounding never merges or splits shells. The representative is
/// the member with the smallest `|n|`, preferring `n >= 0` and then the
/// largest `m`.
pub fn lattice_shells<T: Real>(l1: T, l2: T, upper: T) -> Result<Vec<LatticeShell<T>>> {
    if !upper.is_finite() {
        return Err(Error::InvalidInput(
            "lattice sweep needs a finite frequency bound".into(),
        ));
    }
    if !(upper > T::zero()) {
        return Ok(Vec::new());
    }
    let inv1 = exact(l1.f64())?.recip();
    let inv2 = exact(l2.f64())?.recip();
    let m_max = (upper * l1).floor().to_i64().unwrap_or(0);
    let n_max = (upper * l2).floor().to_i64().unwrap_or(0);
    let bound = upper * upper;

    let mut shells: BTreeMap<BigRational, ((i64, i64), usize)> = BTreeMap::new();
    for m in -m_max..=m_max {
        for n in -n_max..=n_max {
            if m == 0 && n == 0 {
                continue;
            }
            let x1 = T::of_usize(m.unsigned_abs() as usize) / l1;
            let x2 = T::of_usize(n.unsigned_abs() as usize) / l2;
            if !(x1 * x1 + x2 * x2 < bound) {
                continue;
            }
            let a = BigRational::from_integer(BigInt::from(m)) * &inv1;
            let b = BigRational::from_integer(BigInt::from(n)) * &inv2;
            let key = &a * &a + &b * &b;
            let rank = |(m, n): (i64, i64)| (n.abs(), n < 0, -m);
            shells
                .entry(key)
                .and_modify(|(rep, count)| {
                    *count += 1;
                    if rank((m, n)) < rank(*rep) {
                        *rep = (m, n);
                    }
                })
                .or_insert(((m, n), 1));
        }
    }
    Ok(shells
        .into_values()
        .map(|((m, n), multiplicity)| {
            let xi = [T::of(m as f64) / l1, T::of(n as f64) / l2];
            LatticeShell {
                xi,
                indices: (m, n),
                xi_abs: xi[0].hypot(xi[1]),
                multiplicity,
            }
        })
        .collect())
}
