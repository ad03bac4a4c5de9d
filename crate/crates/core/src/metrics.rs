//! Forecast accuracy: root mean squared error and mean absolute percent
//! error. Both are meant for values in original units, not the scaled
//! domain the networks work in.

use crate::error::{invalid, Result};

fn check_lengths(a: &[f64], b: &[f64]) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(invalid("metrics need at least one sample"));
    }
    if a.len() != b.len() {
        return Err(invalid(format!("length mismatch: {} vs {}", a.len(), b.len())));
    }
    Ok(())
}

/// `sqrt((1/n) * sum (p_j - t_j)^2)`.
pub fn rmse(predicted: &[f64], target: &[f64]) -> Result<f64> {
    check_lengths(predicted, target)?;
    let sum: f64 = predicted
        .iter()
        .zip(target)
        .map(|(p, t)| (p - t) * (p - t))
        .sum();
    Ok((sum / predicted.len() as f64).sqrt())
}

/// `(1/n) * sum |(y_t - f_t) / y_t| * 100`.
///
/// Zero original values are rejected, not patched with an epsilon.
pub fn mape(original: &[f64], forecast: &[f64]) -> Result<f64> {
    check_lengths(original, forecast)?;
    if let Some(i) = original.iter().position(|&y| y == 0.0) {
        return Err(invalid(format!("zero original value at index {i}")));
    }
    let sum: f64 = original
        .iter()
        .zip(forecast)
        .map(|(y, f)| ((y - f) / y).abs())
        .sum();
    Ok(sum / original.len() as f64 * 100.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationReport {
    pub indicator: String,
    pub rmse: f64,
    pub mape_percent: f64,
    pub n_samples: usize,
}

impl EvaluationReport {
    pub const CSV_HEADER: &'static str = "indicator,rmse,mape_percent,n_samples";

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{}", self.indicator, self.rmse, self.mape_percent, self.n_samples)
    }

    /// Header plus one row.
    pub fn to_csv(&self) -> String {
        format!("{}\n{}\n", Self::CSV_HEADER, self.csv_row())
    }
}

pub fn evaluate(indicator: &str, predicted: &[f64], target: &[f64]) -> Result<EvaluationReport> {
    let rmse = rmse(predicted, target)?;
    let mape_percent = mape(target, predicted)?;
    if !(rmse.is_finite() && mape_percent.is_finite()) {
        return Err(invalid("metrics overflowed"));
    }
    Ok(EvaluationReport {
        indicator: indicator.to_string(),
        rmse,
        mape_percent,
        n_samples: predicted.len(),
    })
}
