//! Seeded synthetic aging-indicator series.
//!
//! Each sample is
//!
//! ```text
//! value(t) = base
//!          + trend_slope * (t mod reset_period)        // t when reset_period == 0
//!          + season_amplitude * sin(2 * pi * t / season_period)
//!          + noise_sigma * z(t)                       // z ~ N(0, 1)
//! ```
//!
//! for `t = 0 .. length`. The ramp models leak-driven growth, the reset
//! reproduces the stepwise swap growth of a server whose pool recycles,
//! and the sinusoid stands in for a periodic client workload. `z(t)` comes
//! from [`prng::XorShift64Star`], so equal profiles give bit-identical
//! output in any language that follows the documented recurrence.

pub mod prng;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::timeseries::TimeSeries;
use prng::XorShift64Star;

/// Parameters of a synthetic aging series. Field names double as the JSON
/// profile schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgingProfile {
    pub length: usize,
    pub base: f64,
    pub trend_slope: f64,
    pub season_amplitude: f64,
    pub season_period: usize,
    pub noise_sigma: f64,
    /// 0 disables resets.
    pub reset_period: usize,
    pub seed: u64,
}

impl Default for AgingProfile {
    fn default() -> Self {
        Self {
            length: 100,
            base: 0.0,
            trend_slope: 0.0,
            season_amplitude: 0.0,
            season_period: 24,
            noise_sigma: 0.0,
            reset_period: 0,
            seed: 0,
        }
    }
}

impl AgingProfile {
    pub fn validate(&self) -> Result<()> {
        if self.length < 2 {
            return Err(invalid("profile length must be >= 2"));
        }
        if self.season_period < 2 {
            return Err(invalid("season_period must be >= 2"));
        }
        if !(self.noise_sigma.is_finite() && self.noise_sigma >= 0.0) {
            return Err(invalid("noise_sigma must be finite and >= 0"));
        }
        if !(self.season_amplitude.is_finite() && self.season_amplitude >= 0.0) {
            return Err(invalid("season_amplitude must be finite and >= 0"));
        }
        if !(self.base.is_finite() && self.trend_slope.is_finite()) {
            return Err(invalid("base and trend_slope must be finite"));
        }
        Ok(())
    }
}

/// Generates the values described by `profile` (timebase left to the caller).
pub fn generate_values(profile: &AgingProfile) -> Result<Vec<f64>> {
    profile.validate()?;
    let mut rng = XorShift64Star::new(profile.seed);
    let period = profile.season_period as f64;
    let values = (0..profile.length)
        .map(|t| {
            let ramp_t = match profile.reset_period {
                0 => t,
                r => t % r,
            };
            let phase = 2.0 * std::f64::consts::PI * t as f64 / period;
            // One normal draw per sample regardless of sigma keeps the
            // stream aligned across profiles that differ only in sigma.
            let z = rng.next_gaussian();
            profile.base
                + profile.trend_slope * ramp_t as f64
                + profile.season_amplitude * phase.sin()
                + profile.noise_sigma * z
        })
        .collect::<Vec<_>>();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(invalid("profile produced non-finite values"));
    }
    Ok(values)
}

/// Generates a series starting at t = 0 with a 1 s interval.
pub fn generate_aging_series(profile: &AgingProfile) -> Result<TimeSeries> {
    generate_aging_series_at(profile, "synthetic", 0.0, 1.0)
}

pub fn generate_aging_series_at(
    profile: &AgingProfile,
    name: &str,
    start_time: f64,
    interval: f64,
) -> Result<TimeSeries> {
    TimeSeries::new(name, start_time, interval, generate_values(profile)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn flat(length: usize) -> AgingProfile {
        AgingProfile {
            length,
            ..Default::default()
        }
    }

    #[test]
    fn constant_profile() {
        let p = AgingProfile {
            base: 5.0,
            ..flat(4)
        };
        assert_eq!(generate_values(&p).unwrap(), vec![5.0; 4]);
    }

    #[test]
    fn pure_ramp() {
        let p = AgingProfile {
            trend_slope: 1.0,
            ..flat(4)
        };
        assert_eq!(generate_values(&p).unwrap(), vec![0.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn ramp_with_reset() {
        let p = AgingProfile {
            trend_slope: 1.0,
            reset_period: 2,
            ..flat(5)
        };
        assert_eq!(generate_values(&p).unwrap(), vec![0.0, 1.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn rejects_bad_profiles() {
        assert!(generate_values(&flat(1)).is_err());
        assert!(generate_values(&AgingProfile {
            season_period: 1,
            ..flat(4)
        })
        .is_err());
        assert!(generate_values(&AgingProfile {
            noise_sigma: -1.0,
            ..flat(4)
        })
        .is_err());
    }

    #[test]
    fn profile_json_field_names() {
        let json = r#"{"length":3,"base":1.0,"trend_slope":0.5,"season_amplitude":0.0,
            "season_period":4,"noise_sigma":0.0,"reset_period":0,"seed":9}"#;
        let p: AgingProfile = serde_json::from_str(json).unwrap();
        assert_eq!(generate_values(&p).unwrap(), vec![1.0, 1.5, 2.0]);
        assert!(serde_json::from_str::<AgingProfile>(r#"{"length":3,"bogus":1}"#).is_err());
    }

    #[test]
    fn noise_moments() {
        let p = AgingProfile {
            noise_sigma: 2.0,
            seed: 11,
            ..flat(20_000)
        };
        let v = generate_values(&p).unwrap();
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / v.len() as f64;
        assert!(mean.abs() < 0.05, "mean {mean}");
        assert!((var.sqrt() - 2.0).abs() < 0.05, "sd {}", var.sqrt());
    }

    proptest! {
        #[test]
        fn deterministic(seed in any::<u64>(), sigma in 0.0f64..10.0, amp in 0.0f64..5.0) {
            let p = AgingProfile { seed, noise_sigma: sigma, season_amplitude: amp, ..flat(64) };
            let a = generate_values(&p).unwrap();
            let b = generate_values(&p).unwrap();
            prop_assert!(a.iter().zip(&b).all(|(x, y)| x.to_bits() == y.to_bits()));
            prop_assert!(a.iter().all(|v| v.is_finite()));
        }

        // Integer-valued base/slope keep every intermediate exactly representable.
        #[test]
        fn noiseless_drift_is_exact(len in 2usize..500, base in -1000i32..1000, slope in -50i32..50) {
            let p = AgingProfile { base: base as f64, trend_slope: slope as f64, ..flat(len) };
            let v = generate_values(&p).unwrap();
            prop_assert_eq!(v[len - 1] - v[0], slope as f64 * (len - 1) as f64);
        }
    }
}
