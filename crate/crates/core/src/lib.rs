//! Forecasting of software-aging indicators with a radial basis function
//! network, and derivation of rejuvenation schedules from the forecasts.
//!
//! The pipeline is:
//!
//! 1. ingest an indicator series ([`timeseries`]) or synthesize one
//!    ([`synthload`]),
//! 2. scale it to `[0, 1]`, split it chronologically and embed it into
//!    lag-vector / n-step-ahead pairs,
//! 3. train an [`rbfnn::RbfNetwork`] whose centers are the training
//!    exemplars (only hidden-to-output weights are learned),
//! 4. forecast, score with [`metrics`], and feed the forecast to
//!    [`scheduler`] to find the earliest predicted threshold crossing.
//!
//! [`mlp`] provides a plain one-hidden-layer perceptron used as the
//! comparison baseline, and [`benchmark`] runs the two side by side on a
//! frozen synthetic aging profile.
//!
//! ```
//! use agewatch_core::pipeline::{predict_test_segment, prepare};
//! use agewatch_core::{generate_aging_series, rmse, AgingProfile, RbfNetwork, SigmaPolicy, TrainConfig};
//!
//! let profile = AgingProfile { length: 120, base: 100.0, trend_slope: 1.0, ..Default::default() };
//! let series = generate_aging_series(&profile)?;
//! let prepared = prepare(&series, 4, 1, 0.8)?;
//!
//! let mut net = RbfNetwork::from_dataset(&prepared.dataset, SigmaPolicy::MeanPairwiseDistance, 1000, 1)?;
//! net.train(&prepared.dataset, &TrainConfig { epochs: 50, ..Default::default() })?;
//!
//! let predicted = predict_test_segment(&net, &prepared, 1)?;
//! assert_eq!(predicted.len(), prepared.test.len());
//! let error = rmse(&predicted, prepared.test.values())?;
//! assert!(error.is_finite());
//! # Ok::<(), agewatch_core::Error>(())
//! ```

pub mod benchmark;
pub mod error;
pub mod metrics;
pub mod mlp;
pub mod model;
pub mod pipeline;
mod persist;
pub mod rbfnn;
pub mod scheduler;
pub mod synthload;
pub mod timeseries;

pub use error::{Error, Result};
pub use metrics::{evaluate, mape, rmse, EvaluationReport};
pub use mlp::MlpNetwork;
pub use model::{forecast_recursive, ForecastResult, Predictor, TrainConfig, TrainMode, TrainReport};
pub use rbfnn::{RbfNetwork, SigmaPolicy};
pub use scheduler::{derive_schedule, Direction, IndicatorForecast, RejuvenationSchedule, ThresholdSpec};
pub use synthload::{generate_aging_series, AgingProfile};
pub use timeseries::{ResourceSample, ScaleParams, TimeSeries, WindowedDataset};
