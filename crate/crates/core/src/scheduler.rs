//! Rejuvenation scheduling from forecast threshold crossings.
//!
//! Each indicator's forecast is scanned for the first step at which it
//! reaches its exhaustion threshold. The recommended rejuvenation time is
//! the earliest such crossing across indicators, moved `lead` steps
//! earlier and never before the first forecast step.

use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};
use crate::model::ForecastResult;
use crate::timeseries::ScaleParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Exhaustion when the value climbs to the threshold (swap used,
    /// response time).
    Rising,
    /// Exhaustion when the value drops to the threshold (free memory).
    Falling,
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rising" => Ok(Self::Rising),
            "falling" => Ok(Self::Falling),
            other => Err(invalid(format!("unknown direction `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdSpec {
    pub indicator: String,
    /// In original units.
    pub threshold: f64,
    pub direction: Direction,
}

impl ThresholdSpec {
    pub fn new(indicator: impl Into<String>, threshold: f64, direction: Direction) -> Result<Self> {
        if !threshold.is_finite() {
            return Err(invalid("threshold must be finite"));
        }
        Ok(Self {
            indicator: indicator.into(),
            threshold,
            direction,
        })
    }

    fn reached(&self, value: f64) -> bool {
        match self.direction {
            Direction::Rising => value >= self.threshold,
            Direction::Falling => value <= self.threshold,
        }
    }
}

/// One indicator's forecast with the timebase needed to date it.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorForecast {
    pub indicator: String,
    pub forecast: ForecastResult,
    /// Applied to the forecast before comparison; `None` if the values are
    /// already in original units.
    pub scale: Option<ScaleParams>,
    /// Wall-clock time of `forecast.values[0]`.
    pub first_step_time: f64,
    pub interval: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Crossing {
    pub indicator: String,
    /// Index into the forecast of the first value at or past the threshold.
    pub first_crossing_step: Option<usize>,
    pub crossing_time: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RejuvenationSchedule {
    /// One entry per threshold spec, in spec order.
    pub crossings: Vec<Crossing>,
    pub lead: usize,
    pub recommended_step: Option<usize>,
    pub recommended_time: Option<f64>,
}

impl RejuvenationSchedule {
    /// `indicator,first_crossing_step,crossing_time` rows, then a
    /// `recommended_time,<t>` summary line. Missing values print as `none`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("indicator,first_crossing_step,crossing_time\n");
        for c in &self.crossings {
            let step = c.first_crossing_step.map_or("none".into(), |s| s.to_string());
            let time = c.crossing_time.map_or("none".into(), |t| t.to_string());
            let _ = writeln!(out, "{},{},{}", c.indicator, step, time);
        }
        let rec = self.recommended_time.map_or("none".into(), |t| t.to_string());
        let _ = writeln!(out, "recommended_time,{rec}");
        out
    }
}

/// First index whose value reaches the threshold.
pub fn first_crossing(values: &[f64], spec: &ThresholdSpec) -> Option<usize> {
    values.iter().position(|&v| spec.reached(v))
}

pub fn derive_schedule(
    forecasts: &[IndicatorForecast],
    specs: &[ThresholdSpec],
    lead: usize,
) -> Result<RejuvenationSchedule> {
    let mut crossings = Vec::with_capacity(specs.len());
    // (step, time) of the binding indicator.
    let mut earliest: Option<(usize, f64)> = None;

    for spec in specs {
        let fc = forecasts
            .iter()
            .find(|f| f.indicator == spec.indicator)
            .ok_or_else(|| Error::UnknownIndicator(spec.indicator.clone()))?;
        let values: Vec<f64> = match &fc.scale {
            Some(p) => fc.forecast.values.iter().map(|&v| p.unscale(v)).collect(),
            None => fc.forecast.values.clone(),
        };
        let step = first_crossing(&values, spec);
        let time = step.map(|k| fc.first_step_time + k as f64 * fc.interval);

        if let Some(k) = step {
            let shifted = k.saturating_sub(lead);
            let t = fc.first_step_time + shifted as f64 * fc.interval;
            earliest = match earliest {
                Some((_, best)) if best <= t => earliest,
                _ => Some((shifted, t)),
            };
        }
        crossings.push(Crossing {
            indicator: spec.indicator.clone(),
            first_crossing_step: step,
            crossing_time: time,
        });
    }

    Ok(RejuvenationSchedule {
        crossings,
        lead,
        recommended_step: earliest.map(|(s, _)| s),
        recommended_time: earliest.map(|(_, t)| t),
    })
}
