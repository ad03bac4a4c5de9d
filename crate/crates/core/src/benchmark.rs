//! RBF network versus MLP baseline on a frozen synthetic aging series.
//!
//! The reference profile mimics used swap on an overloaded server: a leak
//! ramp that drops back at a fixed period, a daily-style workload cycle
//! and measurement noise. Both models see the same split, scaling,
//! embedding and epoch budget; each keeps its own learning rate because
//! the RBF update carries an extra `2/(J M)` factor.

use std::fmt::Write as _;

use crate::error::Result;
use crate::metrics::{evaluate, EvaluationReport};
use crate::mlp::MlpNetwork;
use crate::model::{TrainConfig, TrainMode, TrainReport};
use crate::pipeline::{predict_test_segment, prepare};
use crate::rbfnn::{RbfNetwork, SigmaPolicy};
use crate::synthload::{generate_aging_series_at, AgingProfile};

pub const REFERENCE_SEED: u64 = 7;

pub fn reference_profile(seed: u64) -> AgingProfile {
    AgingProfile {
        length: 480,
        base: 400.0,
        trend_slope: 2.5,
        season_amplitude: 20.0,
        season_period: 24,
        noise_sigma: 2.0,
        reset_period: 96,
        seed,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkConfig {
    pub profile: AgingProfile,
    pub order: usize,
    pub horizon: usize,
    pub train_fraction: f64,
    pub epochs: usize,
    pub mode: TrainMode,
    pub rbf_learning_rate: f64,
    pub rbf_sigma: SigmaPolicy,
    pub rbf_max_centers: usize,
    pub mlp_learning_rate: f64,
    pub mlp_hidden: usize,
    pub seed: u64,
}

impl BenchmarkConfig {
    pub fn reference(seed: u64) -> Self {
        Self {
            profile: reference_profile(seed),
            order: 4,
            horizon: 1,
            train_fraction: 0.8,
            epochs: 300,
            mode: TrainMode::PerSample,
            rbf_learning_rate: 1000.0,
            rbf_sigma: SigmaPolicy::Explicit(0.05),
            rbf_max_centers: 1000,
            mlp_learning_rate: 0.003,
            mlp_hidden: crate::mlp::DEFAULT_HIDDEN,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelScore {
    pub model: &'static str,
    pub evaluation: EvaluationReport,
    pub training: TrainReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkOutcome {
    pub mlp: ModelScore,
    pub rbf: ModelScore,
}

impl BenchmarkOutcome {
    /// `model,rmse,mape_percent` with the MLP row first.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("model,rmse,mape_percent\n");
        for s in [&self.mlp, &self.rbf] {
            let _ = writeln!(out, "{},{},{}", s.model, s.evaluation.rmse, s.evaluation.mape_percent);
        }
        out
    }

    pub fn rbf_wins(&self) -> bool {
        self.rbf.evaluation.rmse < self.mlp.evaluation.rmse
            && self.rbf.evaluation.mape_percent < self.mlp.evaluation.mape_percent
    }
}

pub fn run_benchmark(config: &BenchmarkConfig) -> Result<BenchmarkOutcome> {
    let series = generate_aging_series_at(&config.profile, "swap_used_kb", 0.0, 60.0)?;
    let prepared = prepare(&series, config.order, config.horizon, config.train_fraction)?;
    let observed = prepared.test.values();
    let train_cfg = |lr: f64| TrainConfig {
        learning_rate: lr,
        epochs: config.epochs,
        mode: config.mode,
        target_mse: 0.0,
        seed: config.seed,
        shuffle: false,
    };

    let mut rbf = RbfNetwork::from_dataset(
        &prepared.dataset,
        config.rbf_sigma,
        config.rbf_max_centers,
        1,
    )?;
    let rbf_training = rbf.train(&prepared.dataset, &train_cfg(config.rbf_learning_rate))?;
    let rbf_pred = predict_test_segment(&rbf, &prepared, config.horizon)?;

    let mut mlp = MlpNetwork::new(prepared.dataset.input_dim(), config.mlp_hidden, 1, config.seed)?;
    let mlp_training = mlp.train(&prepared.dataset, &train_cfg(config.mlp_learning_rate))?;
    let mlp_pred = predict_test_segment(&mlp, &prepared, config.horizon)?;

    Ok(BenchmarkOutcome {
        mlp: ModelScore {
            model: "MLP",
            evaluation: evaluate(series.name(), &mlp_pred, observed)?,
            training: mlp_training,
        },
        rbf: ModelScore {
            model: "RBFNN",
            evaluation: evaluate(series.name(), &rbf_pred, observed)?,
            training: rbf_training,
        },
    })
}
