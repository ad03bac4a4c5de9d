//! Aging-indicator series: ingestion, scaling, chronological split and
//! lag-window embedding.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Relative tolerance on sample spacing when reading series CSV.
pub const SPACING_TOLERANCE: f64 = 1e-6;

/// A uniformly sampled scalar indicator.
///
/// Values are always finite and there is at least one of them.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    name: String,
    start_time: f64,
    interval: f64,
    values: Vec<f64>,
    unit: String,
}

impl TimeSeries {
    pub fn new(
        name: impl Into<String>,
        start_time: f64,
        interval: f64,
        values: Vec<f64>,
    ) -> Result<Self> {
        if !(interval.is_finite() && interval > 0.0) {
            return Err(invalid(format!("interval must be > 0, got {interval}")));
        }
        if !start_time.is_finite() {
            return Err(invalid("start time must be finite"));
        }
        if values.is_empty() {
            return Err(invalid("series must contain at least one sample"));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(invalid(format!("non-finite value at index {i}")));
        }
        Ok(Self {
            name: name.into(),
            start_time,
            interval,
            values,
            unit: String::new(),
        })
    }

    pub fn with_unit(mut self, unit: impl Into<String>) -> Self {
        self.unit = unit.into();
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn unit(&self) -> &str {
        &self.unit
    }

    pub fn start_time(&self) -> f64 {
        self.start_time
    }

    pub fn interval(&self) -> f64 {
        self.interval
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Timestamp of sample `index`.
    pub fn timestamp(&self, index: usize) -> f64 {
        self.start_time + index as f64 * self.interval
    }

    /// Same timebase and labels, new values. Values must be finite.
    pub(crate) fn map_values(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            values: self.values.iter().map(|&v| f(v)).collect(),
            ..self.clone()
        }
    }

    /// Serializes as `timestamp,value` CSV with LF line endings.
    ///
    /// Numbers use Rust's shortest round-trip representation, so reading
    /// the document back yields bit-identical values.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("timestamp,value\n");
        for (i, v) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{},{}", self.timestamp(i), v);
        }
        out
    }
}

/// Options for [`parse_series_csv`].
#[derive(Debug, Clone, Default)]
pub struct CsvOptions {
    pub name: String,
    pub unit: String,
    /// Sampling interval for single-row documents, where it cannot be
    /// inferred. Ignored when the document has two or more rows.
    pub interval: Option<f64>,
}

/// Reads a `timestamp,value` document into a [`TimeSeries`].
///
/// Timestamps must be strictly increasing and uniformly spaced within
/// [`SPACING_TOLERANCE`] relative to the first spacing.
pub fn parse_series_csv(text: &str, options: &CsvOptions) -> Result<TimeSeries> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());

    let header = reader.headers().map_err(|e| Error::Parse {
        line: 1,
        message: e.to_string(),
    })?;
    if header.len() != 2 || &header[0] != "timestamp" || &header[1] != "value" {
        return Err(Error::Parse {
            line: 1,
            message: "expected header `timestamp,value`".into(),
        });
    }

    let mut stamps: Vec<f64> = Vec::new();
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected 2 fields, found {}", record.len()),
            });
        }
        let ts = parse_number(&record[0], line, "timestamp")?;
        let v = parse_number(&record[1], line, "value")?;

        if let Some(&prev) = stamps.last() {
            let dt = ts - prev;
            if dt <= 0.0 {
                return Err(Error::Parse {
                    line,
                    message: "timestamps not strictly increasing".into(),
                });
            }
            if stamps.len() >= 2 {
                let step = stamps[1] - stamps[0];
                if (dt - step).abs() > SPACING_TOLERANCE * step {
                    return Err(Error::Parse {
                        line,
                        message: "non-uniform spacing".into(),
                    });
                }
            }
        }
        stamps.push(ts);
        values.push(v);
    }

    if values.is_empty() {
        return Err(Error::Parse {
            line: 2,
            message: "empty body: no data rows".into(),
        });
    }

    let interval = if stamps.len() >= 2 {
        stamps[1] - stamps[0]
    } else {
        options
            .interval
            .ok_or_else(|| invalid("single-row series needs an explicit interval"))?
    };

    Ok(TimeSeries::new(options.name.clone(), stamps[0], interval, values)?
        .with_unit(options.unit.clone()))
}

fn parse_number(field: &str, line: usize, what: &str) -> Result<f64> {
    let v: f64 = field.parse().map_err(|_| Error::Parse {
        line,
        message: format!("malformed {what} `{field}`"),
    })?;
    if !v.is_finite() {
        return Err(Error::Parse {
            line,
            message: format!("non-finite {what} `{field}`"),
        });
    }
    Ok(v)
}

/// One reading of the memory indicators taken from a meminfo snapshot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResourceSample {
    pub timestamp: f64,
    pub free_mem_kb: f64,
    pub swap_used_kb: f64,
}

/// Parses a `/proc/meminfo`-style snapshot.
///
/// Only `MemFree`, `SwapTotal` and `SwapFree` are read; other keys are
/// skipped. The three required keys must appear exactly once, as
/// `Key:<whitespace><integer> kB`.
pub fn parse_proc_snapshot(text: &str, timestamp: f64) -> Result<ResourceSample> {
    const KEYS: [&str; 3] = ["MemFree", "SwapTotal", "SwapFree"];
    let mut found: [Option<u64>; 3] = [None; 3];

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim_end_matches('\r');
        if trimmed.trim().is_empty() {
            continue;
        }
        let Some((key, rest)) = trimmed.split_once(':') else {
            return Err(Error::Parse {
                line,
                message: format!("expected `Key: value`, got `{trimmed}`"),
            });
        };
        let Some(slot) = KEYS.iter().position(|k| *k == key) else {
            continue;
        };
        if found[slot].is_some() {
            return Err(Error::Parse {
                line,
                message: format!("duplicate key {key}"),
            });
        }
        if !rest.starts_with(char::is_whitespace) {
            return Err(Error::Parse {
                line,
                message: format!("missing whitespace after `{key}:`"),
            });
        }
        let mut parts = rest.split_whitespace();
        let value = parts
            .next()
            .and_then(|v| v.parse::<u64>().ok())
            .ok_or_else(|| Error::Parse {
                line,
                message: format!("malformed value for {key}"),
            })?;
        if parts.next() != Some("kB") || parts.next().is_some() {
            return Err(Error::Parse {
                line,
                message: format!("expected `<integer> kB` for {key}"),
            });
        }
        found[slot] = Some(value);
    }

    let get = |i: usize| found[i].ok_or_else(|| invalid(format!("missing key {}", KEYS[i])));
    let mem_free = get(0)?;
    let swap_total = get(1)?;
    let swap_free = get(2)?;
    if swap_free > swap_total {
        return Err(invalid(format!(
            "negative swap usage: SwapTotal {swap_total} kB < SwapFree {swap_free} kB"
        )));
    }

    Ok(ResourceSample {
        timestamp,
        free_mem_kb: mem_free as f64,
        swap_used_kb: (swap_total - swap_free) as f64,
    })
}

/// Splits periodic snapshots into `free_mem_kb` and `swap_used_kb` series.
pub fn samples_to_series(samples: &[ResourceSample]) -> Result<(TimeSeries, TimeSeries)> {
    let first = samples
        .first()
        .ok_or_else(|| invalid("no resource samples"))?;
    if samples.len() < 2 {
        return Err(invalid("need at least two samples to infer the interval"));
    }
    let step = samples[1].timestamp - first.timestamp;
    for (i, pair) in samples.windows(2).enumerate() {
        let dt = pair[1].timestamp - pair[0].timestamp;
        if dt <= 0.0 || (dt - step).abs() > SPACING_TOLERANCE * step {
            return Err(invalid(format!("non-uniform sample spacing at index {}", i + 1)));
        }
    }
    let free = samples.iter().map(|s| s.free_mem_kb).collect();
    let swap = samples.iter().map(|s| s.swap_used_kb).collect();
    Ok((
        TimeSeries::new("free_mem_kb", first.timestamp, step, free)?.with_unit("kB"),
        TimeSeries::new("swap_used_kb", first.timestamp, step, swap)?.with_unit("kB"),
    ))
}

/// Min/max of a training segment, used to map values onto `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleParams {
    min: f64,
    max: f64,
}

impl ScaleParams {
    pub fn new(min: f64, max: f64) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && max > min) {
            return Err(invalid(format!("scale params need max > min, got [{min}, {max}]")));
        }
        Ok(Self { min, max })
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn scale(&self, v: f64) -> f64 {
        (v - self.min) / (self.max - self.min)
    }

    pub fn unscale(&self, v: f64) -> f64 {
        v * (self.max - self.min) + self.min
    }
}

/// Min-max scales `series` onto `[0, 1]`.
///
/// Constant series are rejected; callers that need them must skip scaling.
pub fn min_max_scale(series: &TimeSeries) -> Result<(TimeSeries, ScaleParams)> {
    if series.len() < 2 {
        return Err(invalid("scaling needs at least two samples"));
    }
    let (min, max) = series
        .values()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if max <= min {
        return Err(invalid("constant series cannot be min-max scaled"));
    }
    let params = ScaleParams::new(min, max)?;
    Ok((apply_scale(series, &params), params))
}

/// Scales `series` with previously fitted params. Values outside the
/// fitted range map outside `[0, 1]`.
pub fn apply_scale(series: &TimeSeries, params: &ScaleParams) -> TimeSeries {
    series.map_values(|v| params.scale(v))
}

pub fn inverse_scale(series: &TimeSeries, params: &ScaleParams) -> TimeSeries {
    series.map_values(|v| params.unscale(v))
}

/// Chronological prefix split: the first `floor(train_fraction * N)`
/// samples train, the rest test.
pub fn split(series: &TimeSeries, train_fraction: f64) -> Result<(TimeSeries, TimeSeries)> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(invalid(format!(
            "train fraction must lie in (0, 1), got {train_fraction}"
        )));
    }
    let n_train = (train_fraction * series.len() as f64).floor() as usize;
    if n_train == 0 {
        return Err(invalid("empty train segment"));
    }
    if n_train >= series.len() {
        return Err(invalid("empty test segment"));
    }
    let (head, tail) = series.values().split_at(n_train);
    let train = TimeSeries {
        values: head.to_vec(),
        ..series.clone()
    };
    let test = TimeSeries {
        start_time: series.timestamp(n_train),
        values: tail.to_vec(),
        ..series.clone()
    };
    Ok((train, test))
}

/// Supervised pairs for an n-step predictor of order m.
///
/// Each input holds `m + 1` consecutive values ordered oldest to newest;
/// the matching target lies `n` steps after the newest input value.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowedDataset {
    order: usize,
    horizon: usize,
    inputs: Vec<Vec<f64>>,
    targets: Vec<f64>,
}

impl WindowedDataset {
    pub fn new(
        order: usize,
        horizon: usize,
        inputs: Vec<Vec<f64>>,
        targets: Vec<f64>,
    ) -> Result<Self> {
        if horizon == 0 {
            return Err(invalid("horizon must be >= 1"));
        }
        if inputs.is_empty() {
            return Err(invalid("dataset must contain at least one pair"));
        }
        if inputs.len() != targets.len() {
            return Err(invalid(format!(
                "{} inputs but {} targets",
                inputs.len(),
                targets.len()
            )));
        }
        for x in &inputs {
            crate::error::ensure_dim(order + 1, x.len())?;
        }
        if inputs.iter().flatten().chain(&targets).any(|v| !v.is_finite()) {
            return Err(invalid("dataset contains non-finite values"));
        }
        Ok(Self {
            order,
            horizon,
            inputs,
            targets,
        })
    }

    /// Number of past lags beyond the newest value.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// Input dimensionality, `order + 1`.
    pub fn input_dim(&self) -> usize {
        self.order + 1
    }

    pub fn inputs(&self) -> &[Vec<f64>] {
        &self.inputs
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    pub fn len(&self) -> usize {
        self.inputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty()
    }

    /// `(input, target)` pairs; targets are returned as one-element slices
    /// so they line up with J-dimensional network outputs.
    pub fn pairs(&self) -> impl Iterator<Item = (&[f64], &[f64])> + '_ {
        self.inputs
            .iter()
            .zip(&self.targets)
            .map(|(x, t)| (x.as_slice(), std::slice::from_ref(t)))
    }
}

/// Embeds `series` into pairs `[x(k) .. x(k+m)] -> x(k+m+n)`.
pub fn embed(series: &TimeSeries, order: usize, horizon: usize) -> Result<WindowedDataset> {
    embed_values(series.values(), order, horizon)
}

pub fn embed_values(values: &[f64], order: usize, horizon: usize) -> Result<WindowedDataset> {
    if horizon == 0 {
        return Err(invalid("horizon must be >= 1"));
    }
    let need = order + horizon + 1;
    if values.len() < need {
        return Err(invalid(format!(
            "series too short: need ≥ {need} samples, have {}",
            values.len()
        )));
    }
    let width = order + 1;
    let count = values.len() - order - horizon;
    let inputs = values
        .windows(width)
        .take(count)
        .map(<[f64]>::to_vec)
        .collect();
    let targets = values[order + horizon..].to_vec();
    WindowedDataset::new(order, horizon, inputs, targets)
}
