//! Glue between the modules: preparing a series for training and turning
//! model outputs back into original units.

use crate::error::{invalid, Result};
use crate::model::Predictor;
use crate::timeseries::{apply_scale, embed, min_max_scale, split, ScaleParams, TimeSeries, WindowedDataset};

/// A series split chronologically, scaled with the training segment's
/// min/max and embedded for training.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub train: TimeSeries,
    pub test: TimeSeries,
    pub scale: ScaleParams,
    /// The whole series in the scaled domain.
    pub scaled: TimeSeries,
    pub dataset: WindowedDataset,
}

pub fn prepare(
    series: &TimeSeries,
    order: usize,
    horizon: usize,
    train_fraction: f64,
) -> Result<Prepared> {
    let (train, test) = split(series, train_fraction)?;
    let (scaled_train, scale) = min_max_scale(&train)?;
    let dataset = embed(&scaled_train, order, horizon)?;
    Ok(Prepared {
        scaled: apply_scale(series, &scale),
        train,
        test,
        scale,
        dataset,
    })
}

/// Predictions of `values[start..end]`, each from the observed window that
/// ends `horizon` steps earlier. Inputs and outputs share the model's
/// domain.
pub fn predict_from_observed<P: Predictor + ?Sized>(
    net: &P,
    values: &[f64],
    start: usize,
    end: usize,
    horizon: usize,
) -> Result<Vec<f64>> {
    let width = net.input_dim();
    if horizon == 0 {
        return Err(invalid("horizon must be >= 1"));
    }
    if end > values.len() || start > end {
        return Err(invalid("prediction range outside the series"));
    }
    if start + 1 < width + horizon {
        return Err(invalid(format!(
            "need {} observed samples before the first prediction, have {start}",
            width + horizon - 1
        )));
    }
    (start..end)
        .map(|i| {
            let last = i - horizon;
            net.predict_scalar(&values[last + 1 - width..=last])
        })
        .collect()
}

/// Predictions for every test-segment sample, in original units.
pub fn predict_test_segment<P: Predictor + ?Sized>(
    net: &P,
    prepared: &Prepared,
    horizon: usize,
) -> Result<Vec<f64>> {
    let start = prepared.train.len();
    let scaled = predict_from_observed(net, prepared.scaled.values(), start, start + prepared.test.len(), horizon)?;
    Ok(scaled.into_iter().map(|v| prepared.scale.unscale(v)).collect())
}
