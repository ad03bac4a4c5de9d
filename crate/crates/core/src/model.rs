//! Types shared by the RBF network and the MLP baseline: training
//! configuration and report, the [`Predictor`] trait and recursive
//! multi-step forecasting.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_dim, invalid, Error, Result};
use crate::synthload::prng::XorShift64Star;

/// Training aborts once the loss exceeds this value.
pub const DIVERGENCE_LIMIT: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrainMode {
    /// Update after every exemplar.
    PerSample,
    /// Accumulate over all exemplars, update once per epoch.
    Batch,
}

impl std::str::FromStr for TrainMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "per-sample" => Ok(Self::PerSample),
            "batch" => Ok(Self::Batch),
            other => Err(invalid(format!("unknown training mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub epochs: usize,
    pub mode: TrainMode,
    /// Stop early once the epoch loss is at or below this value.
    pub target_mse: f64,
    pub seed: u64,
    /// Visit exemplars in a seeded random order each epoch (per-sample mode
    /// only). Off by default, so exemplars are visited chronologically.
    pub shuffle: bool,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.1,
            epochs: 1000,
            mode: TrainMode::PerSample,
            target_mse: 0.0,
            seed: 0,
            shuffle: false,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return Err(invalid("learning rate must be > 0"));
        }
        if !(self.target_mse.is_finite() && self.target_mse >= 0.0) {
            return Err(invalid("target_mse must be >= 0"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainReport {
    pub epochs_run: usize,
    /// Dataset loss after each epoch.
    pub mse_history: Vec<f64>,
    pub converged: bool,
}

impl TrainReport {
    pub fn final_mse(&self) -> Option<f64> {
        self.mse_history.last().copied()
    }

    /// `epoch,mse` CSV, one row per epoch (1-based).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("epoch,mse\n");
        for (i, m) in self.mse_history.iter().enumerate() {
            out.push_str(&format!("{},{}\n", i + 1, m));
        }
        out
    }
}

/// Runs the epoch loop shared by both model types.
///
/// `epoch` performs one epoch of updates given the visiting order;
/// `loss` evaluates the dataset loss afterwards.
pub(crate) fn run_epochs(
    config: &TrainConfig,
    exemplars: usize,
    mut epoch: impl FnMut(&[usize]),
    mut loss: impl FnMut() -> f64,
) -> Result<TrainReport> {
    config.validate()?;
    if exemplars == 0 {
        return Err(invalid("empty dataset"));
    }
    let mut order: Vec<usize> = (0..exemplars).collect();
    let mut rng = XorShift64Star::new(config.seed);
    let mut history = Vec::with_capacity(config.epochs.min(1 << 16));
    let mut converged = false;

    for e in 1..=config.epochs {
        if config.shuffle && config.mode == TrainMode::PerSample {
            rng.shuffle(&mut order);
        }
        epoch(&order);
        let mse = loss();
        if !mse.is_finite() || mse > DIVERGENCE_LIMIT {
            return Err(Error::Divergence { epoch: e, mse });
        }
        history.push(mse);
        if mse <= config.target_mse {
            converged = true;
            break;
        }
    }

    Ok(TrainReport {
        epochs_run: history.len(),
        mse_history: history,
        converged,
    })
}

/// A trained map from a lag window to J outputs.
pub trait Predictor {
    fn input_dim(&self) -> usize;

    fn output_dim(&self) -> usize;

    fn predict(&self, x: &[f64]) -> Result<Vec<f64>>;

    /// First output; the forecasting paths here use J = 1.
    fn predict_scalar(&self, x: &[f64]) -> Result<f64> {
        Ok(self.predict(x)?[0])
    }
}

/// Multi-step forecast in the scaled domain.
#[derive(Debug, Clone, PartialEq)]
pub struct ForecastResult {
    /// `values[k]` is the prediction `k + 1` steps after the origin.
    pub values: Vec<f64>,
    pub horizon_steps: usize,
    /// Index of the last observed sample, relative to the history passed in.
    pub origin_index: usize,
}

/// Forecasts `steps` values past the end of `history`.
///
/// The model maps a window ending at `t` to `x(t + horizon)`. Each forecast
/// step uses observed values where the window covers the history and
/// earlier predictions beyond it. For `horizon == 1` this is the usual
/// shift-in recursion and `history` needs `input_dim` values; in general it
/// needs `input_dim + horizon - 1`. Only the trailing values are read.
pub fn forecast_recursive<P: Predictor + ?Sized>(
    net: &P,
    history: &[f64],
    steps: usize,
    horizon: usize,
) -> Result<ForecastResult> {
    if steps < 1 {
        return Err(invalid("steps must be >= 1"));
    }
    if horizon < 1 {
        return Err(invalid("horizon must be >= 1"));
    }
    ensure_dim(1, net.output_dim())?;
    let width = net.input_dim();
    let need = width + horizon - 1;
    if history.len() < need {
        return Err(Error::DimensionMismatch {
            expected: need,
            actual: history.len(),
        });
    }

    let mut known: Vec<f64> = history[history.len() - need..].to_vec();
    known.reserve(steps);
    for _ in 0..steps {
        // Window ends `horizon` positions before the value being predicted.
        let end = known.len() - horizon;
        let window = &known[end + 1 - width..=end];
        let next = net.predict_scalar(window)?;
        known.push(next);
    }

    Ok(ForecastResult {
        values: known.split_off(need),
        horizon_steps: steps,
        origin_index: history.len() - 1,
    })
}
