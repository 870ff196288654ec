//! Inverse-temperature schedules.

use crate::error::SamplerError;

/// How `λ` evolves over the chain's iterations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaSchedule {
    Constant(f64),
    /// `λ(t) = min(lambda_max, lambda0 · growth^t)`.
    GeometricRamp {
        lambda0: f64,
        growth: f64,
        lambda_max: f64,
    },
}

impl LambdaSchedule {
    pub fn constant(lambda: f64) -> Result<Self, SamplerError> {
        if !lambda.is_finite() {
            return Err(SamplerError::Config(format!(
                "λ must be finite, got {lambda}"
            )));
        }
        Ok(Self::Constant(lambda))
    }

    pub fn ramp(lambda0: f64, growth: f64, lambda_max: f64) -> Result<Self, SamplerError> {
        if !(lambda0.is_finite() && lambda_max.is_finite() && growth.is_finite()) {
            return Err(SamplerError::Config(
                "ramp parameters must be finite".into(),
            ));
        }
        if lambda0 <= 0.0 || growth <= 1.0 || lambda_max < lambda0 {
            return Err(SamplerError::Config(format!(
                "ramp needs 0 < λ0 ≤ max and growth > 1, got λ0={lambda0} growth={growth} max={lambda_max}"
            )));
        }
        Ok(Self::GeometricRamp {
            lambda0,
            growth,
            lambda_max,
        })
    }

    pub fn lambda_at(&self, t: u64) -> f64 {
        match *self {
            Self::Constant(l) => l,
            Self::GeometricRamp {
                lambda0,
                growth,
                lambda_max,
            } => (lambda0 * growth.powf(t as f64)).min(lambda_max),
        }
    }

    /// True when the schedule can take negative values.
    pub fn is_negative(&self) -> bool {
        match *self {
            Self::Constant(l) => l < 0.0,
            Self::GeometricRamp { .. } => false,
        }
    }
}

impl Default for LambdaSchedule {
    fn default() -> Self {
        Self::Constant(1.0)
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    #[test]
    fn constants() {
        for t in [0, 1, 376_300, u64::MAX] {
            assert_eq!(LambdaSchedule::Constant(1.333).lambda_at(t), 1.333);
            assert_eq!(LambdaSchedule::Constant(0.444).lambda_at(t), 0.444);
        }
    }

    #[test]
    fn ramp_start_and_cap() {
        let s = LambdaSchedule::ramp(0.1, 1.0 + 1e-6, 2.0).unwrap();
        assert_eq!(s.lambda_at(0), 0.1);
        assert_eq!(s.lambda_at(u64::MAX), 2.0);
        assert!(s.lambda_at(1_000_000) > 0.27 && s.lambda_at(1_000_000) < 0.28);
    }

    #[test]
    fn rejects_bad_ramps() {
        assert!(LambdaSchedule::ramp(0.0, 1.1, 1.0).is_err());
        assert!(LambdaSchedule::ramp(0.5, 1.0, 1.0).is_err());
        assert!(LambdaSchedule::ramp(0.5, 1.1, 0.4).is_err());
        assert!(LambdaSchedule::constant(f64::NAN).is_err());
    }

    proptest! {
        #[test]
        fn ramp_is_monotone_and_capped(
            lambda0 in 1e-4f64..5.0,
            growth_minus_one in 1e-9f64..0.1,
            extra in 0.0f64..10.0,
            t in 0u64..10_000_000,
            dt in 0u64..1_000_000,
        ) {
            let s = LambdaSchedule::ramp(lambda0, 1.0 + growth_minus_one, lambda0 + extra).unwrap();
            let a = s.lambda_at(t);
            let b = s.lambda_at(t + dt);
            prop_assert!(a <= b);
            prop_assert!(b <= lambda0 + extra);
            prop_assert!(a >= lambda0);
            prop_assert_eq!(a, s.lambda_at(t));
        }
    }
}
