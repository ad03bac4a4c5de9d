//! `agewatch` command-line front end.
//!
//! Exit codes: 0 on success, 1 on data or validation errors, 2 on usage
//! errors. Diagnostics go to stderr; machine-readable output only goes to
//! the files named on the command line.

mod commands;
mod meta;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use agewatch_core::scheduler::Direction;

pub use meta::ModelMeta;

#[derive(Debug, Parser)]
#[command(name = "agewatch", version, about = "Forecast software-aging indicators and schedule rejuvenation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic aging series as `timestamp,value` CSV.
    Generate(GenerateArgs),
    /// Train a model on the leading part of a series.
    Train(TrainArgs),
    /// Forecast a trained model forward from the end of the data.
    Forecast(ForecastArgs),
    /// Score predicted values against observed ones (RMSE, MAPE).
    Evaluate(EvaluateArgs),
    /// Derive a rejuvenation time from forecast threshold crossings.
    Schedule(ScheduleArgs),
    /// Compare the RBF network with the MLP baseline on the reference benchmark.
    Bench(BenchArgs),
    /// Write observed and predicted test-segment values for plotting.
    Plotdata(PlotdataArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// JSON profile (fields: length, base, trend_slope, season_amplitude,
    /// season_period, noise_sigma, reset_period, seed). Flags override it.
    #[arg(long)]
    pub profile: Option<PathBuf>,
    #[arg(long)]
    pub length: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub base: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub trend_slope: Option<f64>,
    #[arg(long)]
    pub season_amplitude: Option<f64>,
    #[arg(long)]
    pub season_period: Option<usize>,
    #[arg(long)]
    pub noise_sigma: Option<f64>,
    /// Steps between resets of the trend ramp; 0 disables resets.
    #[arg(long)]
    pub reset_period: Option<usize>,
    /// Noise seed; overrides the profile's `seed`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Timestamp of the first sample, in seconds.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub start_time: f64,
    /// Seconds between samples.
    #[arg(long, default_value_t = 60.0)]
    pub interval: f64,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Rbf,
    Mlp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    PerSample,
    Batch,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Input series CSV (`timestamp,value`).
    #[arg(long)]
    pub input: PathBuf,
    /// Indicator name recorded with the model; defaults to the input file stem.
    #[arg(long)]
    pub indicator: Option<String>,
    /// Where to write the model document.
    #[arg(long)]
    pub model: PathBuf,
    /// Preprocessing metadata (JSON). Defaults to `<model>.meta.json`.
    #[arg(long)]
    pub meta: Option<PathBuf>,
    /// Optional per-epoch `epoch,mse` CSV.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ModelKind::Rbf)]
    pub kind: ModelKind,
    /// Number of past lags beyond the newest value (input width is order + 1).
    #[arg(long, default_value_t = 4)]
    pub order: usize,
    /// Steps ahead the model predicts.
    #[arg(long, default_value_t = 1)]
    pub horizon: usize,
    /// Leading fraction of the series used for training.
    #[arg(long, default_value_t = 0.8)]
    pub train_fraction: f64,
    /// Step size; defaults to 1.0 for rbf and 0.003 for mlp.
    #[arg(long)]
    pub learning_rate: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    pub epochs: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::PerSample)]
    pub mode: ModeArg,
    /// Stop once the training loss (scaled domain) reaches this value.
    #[arg(long, default_value_t = 0.0)]
    pub target_mse: f64,
    /// Visit exemplars in seeded random order (per-sample mode).
    #[arg(long)]
    pub shuffle: bool,
    /// Seed for shuffling and MLP initialisation.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// RBF width; defaults to the mean pairwise distance between centers.
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Cap on RBF centers (first distinct exemplars are used).
    #[arg(long, default_value_t = 1000)]
    pub max_centers: usize,
    /// MLP hidden units.
    #[arg(long, default_value_t = agewatch_core::mlp::DEFAULT_HIDDEN)]
    pub hidden: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Origin {
    /// Forecast from the last sample of the input series.
    SeriesEnd,
    /// Forecast from the last training sample, covering the test segment.
    TrainEnd,
}

#[derive(Debug, Args)]
pub struct ForecastArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// Defaults to `<model>.meta.json`.
    #[arg(long)]
    pub meta: Option<PathBuf>,
    /// Series the model was trained on (or its continuation).
    #[arg(long)]
    pub input: PathBuf,
    /// Number of steps to forecast; defaults to the test-segment length
    /// with `--origin train-end`.
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, value_enum, default_value_t = Origin::SeriesEnd)]
    pub origin: Origin,
    /// Output series CSV in original units.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Observed series CSV, original units.
    #[arg(long)]
    pub observed: PathBuf,
    /// Predicted series CSV; every timestamp must occur in the observed series.
    #[arg(long)]
    pub predicted: PathBuf,
    /// Label for the report row; defaults to the observed file stem.
    #[arg(long)]
    pub indicator: Option<String>,
    #[arg(long)]
    pub out: PathBuf,
}

/// `NAME=PATH`
#[derive(Debug, Clone, PartialEq)]
pub struct ForecastInput {
    pub indicator: String,
    pub path: PathBuf,
}

fn parse_forecast_input(s: &str) -> Result<ForecastInput, String> {
    let (name, path) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=PATH, got `{s}`"))?;
    if name.is_empty() || path.is_empty() {
        return Err(format!("expected NAME=PATH, got `{s}`"));
    }
    Ok(ForecastInput {
        indicator: name.to_string(),
        path: PathBuf::from(path),
    })
}

/// `NAME:rising|falling:VALUE`
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdArg {
    pub indicator: String,
    pub direction: Direction,
    pub value: f64,
}

fn parse_threshold(s: &str) -> Result<ThresholdArg, String> {
    let mut parts = s.splitn(3, ':');
    let (Some(name), Some(dir), Some(value)) = (parts.next(), parts.next(), parts.next()) else {
        return Err(format!("expected NAME:rising|falling:VALUE, got `{s}`"));
    };
    let direction = dir.parse::<Direction>().map_err(|e| e.to_string())?;
    let value: f64 = value
        .parse()
        .ok()
        .filter(|v: &f64| v.is_finite())
        .ok_or_else(|| format!("invalid threshold value `{value}`"))?;
    if name.is_empty() {
        return Err("empty indicator name".into());
    }
    Ok(ThresholdArg {
        indicator: name.to_string(),
        direction,
        value,
    })
}

#[derive(Debug, Args)]
pub struct ScheduleArgs {
    /// Forecast CSV per indicator, as NAME=PATH (repeatable).
    #[arg(long = "forecast", required = true, value_parser = parse_forecast_input)]
    pub forecasts: Vec<ForecastInput>,
    /// Exhaustion threshold per indicator, as NAME:rising|falling:VALUE (repeatable).
    #[arg(long = "threshold", required = true, value_parser = parse_threshold, allow_hyphen_values = true)]
    pub thresholds: Vec<ThresholdArg>,
    /// Safety lead, in steps, subtracted from the earliest crossing.
    #[arg(long, default_value_t = 0)]
    pub lead: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Seed for the benchmark series and the MLP initialisation.
    #[arg(long, default_value_t = agewatch_core::benchmark::REFERENCE_SEED)]
    pub seed: u64,
    /// Output CSV (`model,rmse,mape_percent`).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PlotdataArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// Defaults to `<model>.meta.json`.
    #[arg(long)]
    pub meta: Option<PathBuf>,
    /// The full series the model was trained on.
    #[arg(long)]
    pub input: PathBuf,
    /// Output CSV (`timestamp,observed,predicted`), one row per test sample.
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match commands::dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}
