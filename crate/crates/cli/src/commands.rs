use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};

use agewatch_core::benchmark::{run_benchmark, BenchmarkConfig};
use agewatch_core::metrics::{evaluate, EvaluationReport};
use agewatch_core::mlp::MlpNetwork;
use agewatch_core::model::{forecast_recursive, Predictor, TrainConfig, TrainMode};
use agewatch_core::pipeline::{predict_test_segment, prepare, Prepared};
use agewatch_core::rbfnn::{RbfNetwork, SigmaPolicy};
use agewatch_core::scheduler::{derive_schedule, IndicatorForecast, ThresholdSpec};
use agewatch_core::synthload::{generate_aging_series_at, AgingProfile};
use agewatch_core::timeseries::{parse_series_csv, CsvOptions, TimeSeries};

use crate::meta::ModelMeta;
use crate::{
    BenchArgs, Command, EvaluateArgs, ForecastArgs, GenerateArgs, ModeArg, ModelKind, Origin,
    PlotdataArgs, ScheduleArgs, TrainArgs,
};

pub(crate) fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Generate(a) => generate(a),
        Command::Train(a) => train(a),
        Command::Forecast(a) => forecast(a),
        Command::Evaluate(a) => evaluate_cmd(a),
        Command::Schedule(a) => schedule(a),
        Command::Bench(a) => bench(a),
        Command::Plotdata(a) => plotdata(a),
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| "series".to_string(), |s| s.to_string_lossy().into_owned())
}

fn read_series(path: &Path, name: &str) -> Result<TimeSeries> {
    let opts = CsvOptions {
        name: name.to_string(),
        ..Default::default()
    };
    parse_series_csv(&read_text(path)?, &opts).with_context(|| format!("parsing {}", path.display()))
}

fn generate(a: GenerateArgs) -> Result<()> {
    let mut profile = match &a.profile {
        Some(p) => serde_json::from_str::<AgingProfile>(&read_text(p)?)
            .with_context(|| format!("parsing profile {}", p.display()))?,
        None => AgingProfile::default(),
    };
    macro_rules! apply {
        ($($field:ident),*) => { $( if let Some(v) = a.$field { profile.$field = v; } )* };
    }
    apply!(length, base, trend_slope, season_amplitude, season_period, noise_sigma, reset_period, seed);

    let series = generate_aging_series_at(&profile, &file_stem(&a.out), a.start_time, a.interval)?;
    write_text(&a.out, &series.to_csv())
}

enum Model {
    Rbf(RbfNetwork),
    Mlp(MlpNetwork),
}

impl Model {
    fn load(path: &Path, kind: ModelKind) -> Result<Self> {
        let text = read_text(path)?;
        let model = match kind {
            ModelKind::Rbf => Model::Rbf(RbfNetwork::from_document(&text)?),
            ModelKind::Mlp => Model::Mlp(MlpNetwork::from_document(&text)?),
        };
        Ok(model)
    }

    fn predictor(&self) -> &dyn Predictor {
        match self {
            Model::Rbf(n) => n,
            Model::Mlp(n) => n,
        }
    }
}

fn train(a: TrainArgs) -> Result<()> {
    let indicator = a.indicator.clone().unwrap_or_else(|| file_stem(&a.input));
    let series = read_series(&a.input, &indicator)?;
    let prepared = prepare(&series, a.order, a.horizon, a.train_fraction)?;
    let config = TrainConfig {
        learning_rate: a.learning_rate.unwrap_or(match a.kind {
            ModelKind::Rbf => 1.0,
            ModelKind::Mlp => 0.003,
        }),
        epochs: a.epochs,
        mode: match a.mode {
            ModeArg::PerSample => TrainMode::PerSample,
            ModeArg::Batch => TrainMode::Batch,
        },
        target_mse: a.target_mse,
        seed: a.seed,
        shuffle: a.shuffle,
    };

    let (document, report) = match a.kind {
        ModelKind::Rbf => {
            let sigma = a.sigma.map_or(SigmaPolicy::MeanPairwiseDistance, SigmaPolicy::Explicit);
            let mut net = RbfNetwork::from_dataset(&prepared.dataset, sigma, a.max_centers, 1)?;
            let report = net.train(&prepared.dataset, &config)?;
            eprintln!(
                "rbf: {} centers, sigma {:.6}, {} epochs",
                net.num_centers(),
                net.sigma(),
                report.epochs_run
            );
            (net.to_document(), report)
        }
        ModelKind::Mlp => {
            let mut net = MlpNetwork::new(prepared.dataset.input_dim(), a.hidden, 1, a.seed)?;
            let report = net.train(&prepared.dataset, &config)?;
            eprintln!("mlp: {} hidden units, {} epochs", a.hidden, report.epochs_run);
            (net.to_document(), report)
        }
    };
    if let Some(mse) = report.final_mse() {
        eprintln!("final training mse (scaled) {mse:.6e}, converged: {}", report.converged);
    }

    let meta = ModelMeta {
        kind: a.kind,
        indicator,
        unit: series.unit().to_string(),
        order: a.order,
        horizon: a.horizon,
        train_fraction: a.train_fraction,
        train_len: prepared.train.len(),
        scale: prepared.scale,
    };
    write_text(&a.model, &document)?;
    write_text(&ModelMeta::resolve(&a.model, a.meta.as_deref()), &meta.to_json()?)?;
    if let Some(path) = &a.report {
        write_text(path, &report.to_csv())?;
    }
    Ok(())
}

/// Loads model + metadata and re-prepares `input` the way training did.
fn load_for_series(
    model_path: &Path,
    meta_path: Option<&Path>,
    input: &Path,
) -> Result<(Model, ModelMeta, TimeSeries, Prepared)> {
    let meta = ModelMeta::load(&ModelMeta::resolve(model_path, meta_path))?;
    let model = Model::load(model_path, meta.kind)?;
    ensure!(
        model.predictor().input_dim() == meta.order + 1,
        "model input width {} does not match order {} in metadata",
        model.predictor().input_dim(),
        meta.order
    );
    let series = read_series(input, &meta.indicator)?;
    let prepared = prepare(&series, meta.order, meta.horizon, meta.train_fraction)?;
    ensure!(
        prepared.train.len() == meta.train_len && prepared.scale == meta.scale,
        "input series does not reproduce the training split and scaling recorded in the metadata"
    );
    Ok((model, meta, series, prepared))
}

fn forecast(a: ForecastArgs) -> Result<()> {
    let (model, meta, series, prepared) = load_for_series(&a.model, a.meta.as_deref(), &a.input)?;
    let history_len = match a.origin {
        Origin::SeriesEnd => series.len(),
        Origin::TrainEnd => prepared.train.len(),
    };
    let steps = match (a.steps, a.origin) {
        (Some(s), _) => s,
        (None, Origin::TrainEnd) => prepared.test.len(),
        (None, Origin::SeriesEnd) => bail!("--steps is required with --origin series-end"),
    };
    let history = &prepared.scaled.values()[..history_len];
    let result = forecast_recursive(model.predictor(), history, steps, meta.horizon)?;
    let values: Vec<f64> = result.values.iter().map(|&v| meta.scale.unscale(v)).collect();
    let out = TimeSeries::new(meta.indicator.as_str(), series.timestamp(history_len), series.interval(), values)?;
    write_text(&a.out, &out.to_csv())
}

/// Pairs each predicted sample with the observed sample at the same time.
fn align(observed: &TimeSeries, predicted: &TimeSeries) -> Result<Vec<f64>> {
    let tol = 1e-6 * observed.interval();
    (0..predicted.len())
        .map(|k| {
            let t = predicted.timestamp(k);
            let pos = ((t - observed.start_time()) / observed.interval()).round();
            let idx = pos as usize;
            if pos < 0.0 || idx >= observed.len() || (observed.timestamp(idx) - t).abs() > tol {
                bail!("predicted timestamp {t} has no observed counterpart");
            }
            Ok(observed.values()[idx])
        })
        .collect()
}

fn evaluate_cmd(a: EvaluateArgs) -> Result<()> {
    let indicator = a.indicator.clone().unwrap_or_else(|| file_stem(&a.observed));
    let observed = read_series(&a.observed, &indicator)?;
    let predicted = read_series(&a.predicted, &indicator)?;
    let targets = align(&observed, &predicted)?;
    let report: EvaluationReport = evaluate(&indicator, predicted.values(), &targets)?;
    eprintln!("{indicator}: rmse {:.6}, mape {:.6}%", report.rmse, report.mape_percent);
    write_text(&a.out, &report.to_csv())
}

fn schedule(a: ScheduleArgs) -> Result<()> {
    let mut forecasts = Vec::with_capacity(a.forecasts.len());
    for f in &a.forecasts {
        let series = read_series(&f.path, &f.indicator)?;
        forecasts.push(IndicatorForecast {
            indicator: f.indicator.clone(),
            first_step_time: series.start_time(),
            interval: series.interval(),
            forecast: agewatch_core::ForecastResult {
                horizon_steps: series.len(),
                values: series.values().to_vec(),
                origin_index: 0,
            },
            scale: None,
        });
    }
    let specs = a
        .thresholds
        .iter()
        .map(|t| ThresholdSpec::new(t.indicator.clone(), t.value, t.direction))
        .collect::<agewatch_core::Result<Vec<_>>>()?;
    let sched = derive_schedule(&forecasts, &specs, a.lead)?;
    match sched.recommended_time {
        Some(t) => eprintln!("recommended rejuvenation at t = {t}"),
        None => eprintln!("no threshold crossing within the forecast horizon"),
    }
    write_text(&a.out, &sched.to_csv())
}

fn bench(a: BenchArgs) -> Result<()> {
    let outcome = run_benchmark(&BenchmarkConfig::reference(a.seed))?;
    eprint!("{}", outcome.to_csv());
    if !outcome.rbf_wins() {
        eprintln!("note: RBFNN does not beat the MLP on both metrics for this seed");
    }
    write_text(&a.out, &outcome.to_csv())
}

fn plotdata(a: PlotdataArgs) -> Result<()> {
    let (model, meta, _series, prepared) = load_for_series(&a.model, a.meta.as_deref(), &a.input)?;
    let predicted = predict_test_segment(model.predictor(), &prepared, meta.horizon)?;
    let mut out = String::from("timestamp,observed,predicted\n");
    for (k, (obs, pred)) in prepared.test.values().iter().zip(&predicted).enumerate() {
        let _ = writeln!(out, "{},{},{}", prepared.test.timestamp(k), obs, pred);
    }
    write_text(&a.out, &out)
}
