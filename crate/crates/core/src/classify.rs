//! Stability regime of an equilibrium from the sign of the density jump and
//! the surface tensions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeLabel {
    StableAlmostExponentialDecay,
    StableExponentialDecay,
    LocallyWellPosed,
    NonlinearlyUnstable,
}

impl RegimeLabel {
    pub const ALL: [RegimeLabel; 4] = [
        RegimeLabel::StableAlmostExponentialDecay,
        RegimeLabel::StableExponentialDecay,
        RegimeLabel::LocallyWellPosed,
        RegimeLabel::NonlinearlyUnstable,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RegimeLabel::StableAlmostExponentialDecay => "stable_almost_exponential_decay",
            RegimeLabel::StableExponentialDecay => "stable_exponential_decay",
            RegimeLabel::LocallyWellPosed => "locally_well_posed",
            RegimeLabel::NonlinearlyUnstable => "nonlinearly_unstable",
        }
    }

    /// Short statement of the long-time behaviour for this regime.
    pub fn decay_claim(self) -> &'static str {
        match self {
            RegimeLabel::StableAlmostExponentialDecay => {
                "nonlinearly stable; decay to equilibrium at an almost exponential rate"
            }
            RegimeLabel::StableExponentialDecay => {
                "nonlinearly stable; exponential decay to equilibrium"
            }
            RegimeLabel::LocallyWellPosed => "locally well-posed; no stability statement",
            RegimeLabel::NonlinearlyUnstable => "nonlinearly unstable; no decay",
        }
    }

    pub fn is_stable(self) -> bool {
        matches!(
            self,
            RegimeLabel::StableAlmostExponentialDecay | RegimeLabel::StableExponentialDecay
        )
    }
}

impl fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Table lookup with exact sign tests; `sigma_c` only matters when
/// `jump > 0`. A positive upper tension with zero lower tension is treated
/// as the `sigma_- < sigma_c` row.
pub fn classify_regime<T: Real>(
    jump: T,
    sigma_plus: T,
    sigma_minus: T,
    sigma_c: T,
) -> Result<RegimeLabel> {
    for (name, v) in [
        ("jump", jump),
        ("sigma_plus", sigma_plus),
        ("sigma_minus", sigma_minus),
    ] {
        if v.is_nan() {
            return Err(Error::InvalidInput(format!("{name} is NaN")));
        }
    }
    if sigma_plus < T::zero() || sigma_minus < T::zero() {
        return Err(Error::InvalidInput(format!(
            "surface tensions must be non-negative, got {sigma_plus} and {sigma_minus}"
        )));
    }
    let zero = T::zero();
    if sigma_plus == zero {
        if sigma_minus > zero {
            return Err(Error::InvalidInput(
                "zero upper tension with positive lower tension is not a classified case".into(),
            ));
        }
        return Ok(if jump < zero {
            RegimeLabel::StableAlmostExponentialDecay
        } else if jump == zero {
            RegimeLabel::LocallyWellPosed
        } else {
            RegimeLabel::NonlinearlyUnstable
        });
    }
    if jump <= zero {
        return Ok(RegimeLabel::StableExponentialDecay);
    }
    if sigma_c.is_nan() {
        return Err(Error::InvalidInput("sigma_c is NaN".into()));
    }
    Ok(if sigma_minus < sigma_c {
        RegimeLabel::NonlinearlyUnstable
    } else if sigma_minus == sigma_c {
        RegimeLabel::LocallyWellPosed
    } else {
        RegimeLabel::StableExponentialDecay
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub jump: f64,
    pub sigma_plus: f64,
    pub sigma_minus: f64,
    pub sigma_c: f64,
    pub regime: RegimeLabel,
    pub decay_claim: String,
}

pub fn regime_report<T: Real>(
    jump: T,
    sigma_plus: T,
    sigma_minus: T,
    sigma_c: T,
) -> Result<RegimeReport> {
    let regime = classify_regime(jump, sigma_plus, sigma_minus, sigma_c)?;
    Ok(RegimeReport {
        jump: jump.f64(),
        sigma_plus: sigma_plus.f64(),
        sigma_minus: sigma_minus.f64(),
        sigma_c: sigma_c.f64(),
        regime,
        decay_claim: regime.decay_claim().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use RegimeLabel::*;

    #[test]
    fn table_cells() {
        let sc = 2.0;
        let cases: [((f64, f64, f64), RegimeLabel); 12] = [
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
        for ((jump, sp, sm), want) in cases {
            assert_eq!(
                classify_regime(jump, sp, sm, sc).unwrap(),
                want,
                "{jump} {sp} {sm}"
            );
        }
    }

    #[test]
    fn rejected_inputs() {
        for (sp, sm) in [(-1.0, 0.0), (0.0, -1.0), (0.0, 0.5), (f64::NAN, 0.0)] {
            assert!(matches!(
                classify_regime(1.0, sp, sm, 1.0),
                Err(Error::InvalidInput(_))
            ));
        }
    }

    #[test]
    fn positive_upper_zero_lower() {
        assert_eq!(
            classify_regime(1.0, 1.0, 0.0, 2.0).unwrap(),
            NonlinearlyUnstable
        );
        assert_eq!(
            classify_regime(-1.0, 1.0, 0.0, -2.0).unwrap(),
            StableExponentialDecay
        );
    }

    #[test]
    fn report_json() {
        let r = regime_report(1.0, 1.0, 2.0, 2.0).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["regime"], "locally_well_posed");
        assert_eq!(v["sigma_c"], 2.0);
        for key in ["jump", "sigma_plus", "sigma_minus", "decay_claim"] {
            assert!(v.get(key).is_some());
        }
        for l in RegimeLabel::ALL {
            assert_eq!(serde_json::to_value(l).unwrap(), l.as_str());
        }
    }

    proptest! {
        #[test]
        fn total_on_valid_inputs(
            jump in prop_oneof![Just(0.0), -5.0..5.0f64],
            sp in prop_oneof![Just(0.0), 0.0..5.0f64],
            sm in prop_oneof![Just(0.0), 0.0..5.0f64],
            sc in 0.0..5.0f64,
        ) {
            let r = classify_regime(jump, sp, sm, sc);
            if sp == 0.0 && sm > 0.0 {
                prop_assert!(r.is_err());
            } else {
                let label = r.unwrap();
                if jump <= 0.0 {
                    prop_assert!(label.is_stable() || (jump == 0.0 && sp == 0.0));
                }
                if jump > 0.0 && sm < sc {
                    prop_assert_eq!(label, NonlinearlyUnstable);
                }
            }
        }
    }
}
