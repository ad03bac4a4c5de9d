//! Radial basis function network with exemplar centers.
//!
//! Hidden unit `m` responds to an input `x` with
//! `Y_m = exp(-|x - C_m|^2 / (2 sigma^2))`, and output `j` is the averaged
//! weighted sum `Z_j = (1/M) * sum_m mu[m][j] * Y_m`. There are no weights
//! between the input and hidden layers. Centers are copies of training
//! inputs and `sigma` is shared, so only the hidden-to-output weights
//! `mu` are learned, by steepest descent on
//! `E = (1/J) * sum_j (t_j - Z_j)^2`.
//!
//! The `1/M` output factor and the matching `2 eta / (J M)` step factor are
//! kept as-is. They rescale the weights and the effective step size but do
//! not change which functions the network can represent.

use std::collections::HashSet;

use crate::error::{ensure_dim, invalid, Error, Result};
use crate::model::{run_epochs, Predictor, TrainConfig, TrainMode, TrainReport};
use crate::persist;
use crate::timeseries::WindowedDataset;

/// Lower bound applied to a data-derived width.
pub const SIGMA_FLOOR: f64 = 1e-6;

const MAGIC: &str = "agewatch-rbf";

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SigmaPolicy {
    Explicit(f64),
    /// Mean Euclidean distance over all center pairs, floored at
    /// [`SIGMA_FLOOR`]. Needs at least two centers.
    MeanPairwiseDistance,
}

/// Gaussian response of one hidden unit.
pub fn rbf_activation(x: &[f64], center: &[f64], sigma: f64) -> Result<f64> {
    ensure_dim(center.len(), x.len())?;
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(invalid("sigma must be > 0"));
    }
    Ok(gaussian(x, center, sigma))
}

#[inline]
fn gaussian(x: &[f64], center: &[f64], sigma: f64) -> f64 {
    let d2: f64 = x.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum();
    (-d2 / (2.0 * sigma * sigma)).exp()
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Mean pairwise Euclidean distance, floored at [`SIGMA_FLOOR`].
pub fn mean_pairwise_distance(centers: &[Vec<f64>]) -> Result<f64> {
    let m = centers.len();
    if m < 2 {
        return Err(invalid(
            "mean-pairwise sigma needs at least two distinct centers; give sigma explicitly",
        ));
    }
    let mut total = 0.0;
    for i in 0..m {
        for j in i + 1..m {
            total += distance(&centers[i], &centers[j]);
        }
    }
    let pairs = (m * (m - 1) / 2) as f64;
    Ok((total / pairs).max(SIGMA_FLOOR))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RbfNetwork {
    centers: Vec<Vec<f64>>,
    sigma: f64,
    /// `weights[m][j]`, M rows of J.
    weights: Vec<Vec<f64>>,
}

impl RbfNetwork {
    pub fn new(centers: Vec<Vec<f64>>, sigma: f64, weights: Vec<Vec<f64>>) -> Result<Self> {
        let m = centers.len();
        if m == 0 {
            return Err(invalid("network needs at least one center"));
        }
        let d = centers[0].len();
        if d == 0 {
            return Err(invalid("input dimension must be >= 1"));
        }
        for c in &centers {
            ensure_dim(d, c.len())?;
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(invalid(format!("sigma must be finite and > 0, got {sigma}")));
        }
        if weights.len() != m {
            return Err(invalid(format!(
                "weight matrix shape: {} rows for {m} centers",
                weights.len()
            )));
        }
        let j = weights[0].len();
        if j == 0 || weights.iter().any(|r| r.len() != j) {
            return Err(invalid("weight matrix shape: ragged or empty rows"));
        }
        if centers.iter().chain(&weights).flatten().any(|v| !v.is_finite()) {
            return Err(invalid("network parameters must be finite"));
        }
        Ok(Self {
            centers,
            sigma,
            weights,
        })
    }

    /// Builds an untrained network whose centers are the first
    /// `max_centers` distinct training inputs, in dataset order, with all
    /// weights zero.
    pub fn from_dataset(
        dataset: &WindowedDataset,
        sigma: SigmaPolicy,
        max_centers: usize,
        output_dim: usize,
    ) -> Result<Self> {
        Self::from_exemplars(dataset.inputs(), sigma, max_centers, output_dim)
    }

    pub fn from_exemplars(
        inputs: &[Vec<f64>],
        sigma: SigmaPolicy,
        max_centers: usize,
        output_dim: usize,
    ) -> Result<Self> {
        if inputs.is_empty() {
            return Err(invalid("no exemplars to place centers on"));
        }
        if max_centers == 0 {
            return Err(invalid("max_centers must be >= 1"));
        }
        if output_dim == 0 {
            return Err(invalid("output dimension must be >= 1"));
        }
        let mut seen = HashSet::new();
        let centers: Vec<Vec<f64>> = inputs
            .iter()
            // +0.0 folds -0.0 into 0.0 so equal vectors hash equal.
            .filter(|x| seen.insert(x.iter().map(|v| (v + 0.0).to_bits()).collect::<Vec<_>>()))
            .take(max_centers)
            .cloned()
            .collect();
        let sigma = match sigma {
            SigmaPolicy::Explicit(s) => s,
            SigmaPolicy::MeanPairwiseDistance => mean_pairwise_distance(&centers)?,
        };
        let weights = vec![vec![0.0; output_dim]; centers.len()];
        Self::new(centers, sigma, weights)
    }

    pub fn centers(&self) -> &[Vec<f64>] {
        &self.centers
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    /// Number of hidden units, M.
    pub fn num_centers(&self) -> usize {
        self.centers.len()
    }

    pub fn input_dim(&self) -> usize {
        self.centers[0].len()
    }

    pub fn output_dim(&self) -> usize {
        self.weights[0].len()
    }

    pub fn set_weights(&mut self, weights: Vec<Vec<f64>>) -> Result<()> {
        *self = Self::new(self.centers.clone(), self.sigma, weights)?;
        Ok(())
    }

    /// Hidden-layer activations `Y`.
    pub fn hidden(&self, x: &[f64]) -> Result<Vec<f64>> {
        ensure_dim(self.input_dim(), x.len())?;
        Ok(self
            .centers
            .iter()
            .map(|c| gaussian(x, c, self.sigma))
            .collect())
    }

    /// Returns `(Z, Y)`: outputs and hidden activations.
    pub fn forward(&self, x: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
        let y = self.hidden(x)?;
        Ok((weighted_output(&self.weights, &y), y))
    }

    /// Per-sample loss `(1/J) * sum_j (t_j - Z_j)^2`.
    pub fn sample_error(&self, x: &[f64], target: &[f64]) -> Result<f64> {
        ensure_dim(self.output_dim(), target.len())?;
        let (z, _) = self.forward(x)?;
        Ok(squared_error(&z, target))
    }

    /// Mean per-sample loss over a scalar-target dataset (needs J = 1).
    pub fn mse(&self, dataset: &WindowedDataset) -> Result<f64> {
        ensure_dim(self.output_dim(), 1)?;
        let mut total = 0.0;
        for (x, t) in dataset.pairs() {
            total += self.sample_error(x, t)?;
        }
        Ok(total / dataset.len() as f64)
    }

    /// `dE/dmu[m][j] = -(2 / (J M)) * (t_j - Z_j) * Y_m` for one sample.
    pub fn gradient(&self, x: &[f64], target: &[f64]) -> Result<Vec<Vec<f64>>> {
        ensure_dim(self.output_dim(), target.len())?;
        let (z, y) = self.forward(x)?;
        let scale = -2.0 / (self.output_dim() * self.num_centers()) as f64;
        Ok(y.iter()
            .map(|&ym| {
                target
                    .iter()
                    .zip(&z)
                    .map(|(t, zj)| scale * (t - zj) * ym)
                    .collect()
            })
            .collect())
    }

    /// Trains on a scalar-target dataset (needs J = 1). Centers and sigma
    /// stay fixed; only weights change.
    pub fn train(&mut self, dataset: &WindowedDataset, config: &TrainConfig) -> Result<TrainReport> {
        ensure_dim(self.output_dim(), 1)?;
        let targets: Vec<Vec<f64>> = dataset.targets().iter().map(|&t| vec![t]).collect();
        self.train_exemplars(dataset.inputs(), &targets, config)
    }

    /// Trains on J-dimensional targets.
    ///
    /// Per-sample mode applies
    /// `mu[m][j] += (2 eta / (J M)) * (t_j - Z_j) * Y_m` after each exemplar.
    /// Batch mode sums the same increments over all exemplars with the
    /// weights held fixed, then applies them once per epoch.
    pub fn train_exemplars(
        &mut self,
        inputs: &[Vec<f64>],
        targets: &[Vec<f64>],
        config: &TrainConfig,
    ) -> Result<TrainReport> {
        if inputs.len() != targets.len() {
            return Err(invalid("inputs and targets differ in length"));
        }
        for t in targets {
            ensure_dim(self.output_dim(), t.len())?;
        }
        // Centers and sigma are frozen, so hidden activations are fixed per exemplar.
        let hidden: Vec<Vec<f64>> = inputs
            .iter()
            .map(|x| self.hidden(x))
            .collect::<Result<_>>()?;

        let j_dim = self.output_dim();
        let step = 2.0 * config.learning_rate / (j_dim * self.num_centers()) as f64;
        let mode = config.mode;
        let weights = std::cell::RefCell::new(std::mem::take(&mut self.weights));
        let m_count = self.num_centers();
        let outputs = weighted_output;

        let report = run_epochs(
            config,
            inputs.len(),
            |order| {
                let mut w = weights.borrow_mut();
                match mode {
                    TrainMode::PerSample => {
                        for &q in order {
                            let z = outputs(&w, &hidden[q]);
                            let err: Vec<f64> =
                                targets[q].iter().zip(&z).map(|(t, zj)| t - zj).collect();
                            for (row, &ym) in w.iter_mut().zip(&hidden[q]) {
                                for (wm, e) in row.iter_mut().zip(&err) {
                                    *wm += step * e * ym;
                                }
                            }
                        }
                    }
                    TrainMode::Batch => {
                        let mut acc = vec![vec![0.0; j_dim]; m_count];
                        for &q in order {
                            let z = outputs(&w, &hidden[q]);
                            for (acc_row, &ym) in acc.iter_mut().zip(&hidden[q]) {
                                for ((a, t), zj) in acc_row.iter_mut().zip(&targets[q]).zip(&z) {
                                    *a += (t - zj) * ym;
                                }
                            }
                        }
                        for (row, acc_row) in w.iter_mut().zip(&acc) {
                            for (wm, a) in row.iter_mut().zip(acc_row) {
                                *wm += step * a;
                            }
                        }
                    }
                }
            },
            || {
                let w = weights.borrow();
                hidden
                    .iter()
                    .zip(targets)
                    .map(|(y, t)| squared_error(&outputs(&w, y), t))
                    .sum::<f64>()
                    / hidden.len() as f64
            },
        );
        self.weights = weights.into_inner();
        report
    }

    /// Serializes to the `agewatch-rbf v1` text format.
    pub fn to_document(&self) -> String {
        let mut w = persist::Writer::new(MAGIC);
        w.field("input_dim", self.input_dim());
        w.field("output_dim", self.output_dim());
        w.real("sigma", self.sigma);
        w.field("M", self.num_centers());
        for c in &self.centers {
            w.row(c);
        }
        for r in &self.weights {
            w.row(r);
        }
        w.finish()
    }

    pub fn from_document(text: &str) -> Result<Self> {
        let mut r = persist::Reader::new(text, MAGIC)?;
        let d = r.usize("input_dim")?;
        let j = r.usize("output_dim")?;
        let sigma = r.real("sigma")?;
        let m = r.usize("M")?;
        if d == 0 || j == 0 || m == 0 {
            return Err(Error::ModelFormat("dimension inconsistency: zero-sized network".into()));
        }
        let centers = r.matrix(m, d, "center").map_err(|e| match e {
            Error::ModelFormat(msg) => Error::ModelFormat(format!("dimension inconsistency: {msg}")),
            other => other,
        })?;
        let weights = r.matrix(m, j, "weight")?;
        r.expect_end("weight")?;
        Self::new(centers, sigma, weights).map_err(|e| Error::ModelFormat(e.to_string()))
    }
}

impl Predictor for RbfNetwork {
    fn input_dim(&self) -> usize {
        RbfNetwork::input_dim(self)
    }

    fn output_dim(&self) -> usize {
        RbfNetwork::output_dim(self)
    }

    fn predict(&self, x: &[f64]) -> Result<Vec<f64>> {
        Ok(self.forward(x)?.0)
    }
}

/// `Z_j = (1/M) * sum_m w[m][j] * Y_m`.
fn weighted_output(weights: &[Vec<f64>], y: &[f64]) -> Vec<f64> {
    let mut z = vec![0.0; weights[0].len()];
    for (row, &ym) in weights.iter().zip(y) {
        for (zj, &w) in z.iter_mut().zip(row) {
            *zj += w * ym;
        }
    }
    let m = weights.len() as f64;
    z.iter_mut().for_each(|zj| *zj /= m);
    z
}

fn squared_error(z: &[f64], t: &[f64]) -> f64 {
    z.iter().zip(t).map(|(a, b)| (b - a) * (b - a)).sum::<f64>() / z.len() as f64
}

/// Builds an untrained network; see [`RbfNetwork::from_dataset`].
pub fn init_network(
    dataset: &WindowedDataset,
    sigma: SigmaPolicy,
    max_centers: usize,
    output_dim: usize,
) -> Result<RbfNetwork> {
    RbfNetwork::from_dataset(dataset, sigma, max_centers, output_dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::forecast_recursive;
    use crate::timeseries::embed_values;

    fn one_center(weight: f64) -> RbfNetwork {
        RbfNetwork::new(vec![vec![0.0]], 1.0, vec![vec![weight]]).unwrap()
    }

    #[test]
    fn activation_examples() {
        assert_eq!(rbf_activation(&[0.3, 0.4], &[0.3, 0.4], 0.7).unwrap(), 1.0);
        let a = rbf_activation(&[1.0, 0.0], &[0.0, 0.0], 1.0).unwrap();
        assert!((a - 0.6065306597126334).abs() < 1e-15);
        let a = rbf_activation(&[2.0], &[0.0], 1.0).unwrap();
        assert!((a - 0.1353352832366127).abs() < 1e-15);
        assert!(matches!(
            rbf_activation(&[1.0], &[0.0, 0.0], 1.0),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(rbf_activation(&[1.0], &[0.0], 0.0).is_err());
    }

    #[test]
    fn init_uses_exemplars_as_centers() {
        let d = WindowedDataset::new(0, 1, vec![vec![0.0], vec![1.0], vec![2.0]], vec![1.0; 3])
            .unwrap();
        let net = init_network(&d, SigmaPolicy::Explicit(0.5), 10, 1).unwrap();
        assert_eq!(net.num_centers(), 3);
        assert_eq!(net.centers(), d.inputs());
        assert!(net.weights().iter().flatten().all(|&w| w == 0.0));
        let (z, _) = net.forward(&[0.7]).unwrap();
        assert_eq!(z, vec![0.0]);
    }

    #[test]
    fn init_dedups_and_caps() {
        let inputs = vec![vec![1.0], vec![-0.0], vec![1.0], vec![0.0], vec![2.0], vec![3.0]];
        let net = RbfNetwork::from_exemplars(&inputs, SigmaPolicy::Explicit(1.0), 3, 1).unwrap();
        assert_eq!(net.centers(), &[vec![1.0], vec![-0.0], vec![2.0]]);
    }

    #[test]
    fn mean_pairwise_sigma() {
        let inputs = vec![vec![0.0], vec![2.0]];
        let net =
            RbfNetwork::from_exemplars(&inputs, SigmaPolicy::MeanPairwiseDistance, 10, 1).unwrap();
        assert_eq!(net.sigma(), 2.0);

        // Equilateral-ish check: (0,0),(3,4),(0,4) -> distances 5, 3, 4.
        let s = mean_pairwise_distance(&[vec![0.0, 0.0], vec![3.0, 4.0], vec![0.0, 4.0]]).unwrap();
        assert!((s - 4.0).abs() < 1e-15);

        let e = RbfNetwork::from_exemplars(&[vec![1.0]], SigmaPolicy::MeanPairwiseDistance, 10, 1)
            .unwrap_err();
        assert!(e.to_string().contains("explicitly"));
        // Duplicates collapse to one center, so the policy is undefined here too.
        assert!(RbfNetwork::from_exemplars(
            &[vec![1.0], vec![1.0]],
            SigmaPolicy::MeanPairwiseDistance,
            10,
            1
        )
        .is_err());
    }

    #[test]
    fn forward_examples() {
        let (z, y) = one_center(1.0).forward(&[0.0]).unwrap();
        assert_eq!((z, y), (vec![1.0], vec![1.0]));

        // sigma = 1; second center at distance sqrt(2 ln 2) gives Y = 0.5.
        let r = (2.0 * std::f64::consts::LN_2).sqrt();
        let net =
            RbfNetwork::new(vec![vec![0.0], vec![r]], 1.0, vec![vec![2.0], vec![4.0]]).unwrap();
        let (z, y) = net.forward(&[0.0]).unwrap();
        assert_eq!(y[0], 1.0);
        assert!((y[1] - 0.5).abs() < 1e-15);
        assert!((z[0] - 2.0).abs() < 1e-15);
        assert!(net.forward(&[0.0, 1.0]).is_err());
    }

    #[test]
    fn mse_examples() {
        let net = one_center(0.0);
        let d = WindowedDataset::new(0, 1, vec![vec![0.0]], vec![0.0]).unwrap();
        assert_eq!(net.mse(&d).unwrap(), 0.0);
        let d = WindowedDataset::new(0, 1, vec![vec![0.0]], vec![1.0]).unwrap();
        assert_eq!(net.mse(&d).unwrap(), 1.0);
        let d = WindowedDataset::new(0, 1, vec![vec![0.0], vec![0.0]], vec![1.0, 2.0]).unwrap();
        assert_eq!(net.mse(&d).unwrap(), 2.5);
    }

    #[test]
    fn gradient_examples() {
        assert_eq!(one_center(1.0).gradient(&[0.0], &[1.0]).unwrap(), vec![vec![0.0]]);
        assert_eq!(one_center(0.0).gradient(&[0.0], &[1.0]).unwrap(), vec![vec![-2.0]]);
    }

    #[test]
    fn zero_epochs_is_noop() {
        let mut net = one_center(0.25);
        let d = WindowedDataset::new(0, 1, vec![vec![0.0]], vec![1.0]).unwrap();
        let cfg = TrainConfig {
            epochs: 0,
            learning_rate: 123.0,
            ..Default::default()
        };
        let rep = net.train(&d, &cfg).unwrap();
        assert_eq!(rep.epochs_run, 0);
        assert!(rep.mse_history.is_empty());
        assert_eq!(net.weights(), &[vec![0.25]]);
    }

    #[test]
    fn toy_recurrence_converges() {
        // mu(k+1) = mu(k) + 2 eta (1 - mu(k)); closed form 1 - (1 - 2 eta)^k.
        let d = WindowedDataset::new(0, 1, vec![vec![0.0]], vec![1.0]).unwrap();
        for eta in [0.05, 0.2, 0.45] {
            let mut net = one_center(0.0);
            let cfg = TrainConfig {
                epochs: 20,
                learning_rate: eta,
                ..Default::default()
            };
            let rep = net.train(&d, &cfg).unwrap();
            let expected = 1.0 - (1.0f64 - 2.0 * eta).powi(20);
            assert!((net.weights()[0][0] - expected).abs() < 1e-12);
            assert!(rep.mse_history.windows(2).all(|w| w[1] <= w[0]));
        }
        let mut net = one_center(0.0);
        let cfg = TrainConfig {
            epochs: 100,
            learning_rate: 0.5,
            ..Default::default()
        };
        net.train(&d, &cfg).unwrap();
        assert!((net.weights()[0][0] - 1.0).abs() < 1e-3);
    }

    #[test]
    fn batch_equals_per_sample_for_one_exemplar() {
        let d = WindowedDataset::new(1, 1, vec![vec![0.2, 0.4]], vec![0.9]).unwrap();
        let base = RbfNetwork::new(vec![vec![0.0, 0.5]], 0.3, vec![vec![0.1]]).unwrap();
        let mut a = base.clone();
        let mut b = base;
        let cfg = TrainConfig {
            epochs: 25,
            learning_rate: 0.3,
            ..Default::default()
        };
        let ra = a.train(&d, &cfg).unwrap();
        let rb = b
            .train(
                &d,
                &TrainConfig {
                    mode: TrainMode::Batch,
                    ..cfg
                },
            )
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(ra, rb);
    }

    #[test]
    fn early_stop_and_divergence() {
        let d = WindowedDataset::new(0, 1, vec![vec![0.0]], vec![1.0]).unwrap();
        let mut net = one_center(0.0);
        let rep = net
            .train(
                &d,
                &TrainConfig {
                    epochs: 1000,
                    learning_rate: 0.25,
                    target_mse: 1e-6,
                    ..Default::default()
                },
            )
            .unwrap();
        assert!(rep.converged);
        assert!(rep.epochs_run < 1000);
        assert_eq!(rep.mse_history.len(), rep.epochs_run);

        // eta > 1 makes |1 - 2 eta| > 1, so the recurrence blows up.
        let mut net = one_center(0.0);
        let err = net
            .train(
                &d,
                &TrainConfig {
                    epochs: 10_000,
                    learning_rate: 5.0,
                    ..Default::default()
                },
            )
            .unwrap_err();
        assert!(matches!(err, Error::Divergence { .. }), "{err}");
        assert!(net.train(&d, &TrainConfig { learning_rate: 0.0, ..Default::default() }).is_err());
    }

    #[test]
    fn constant_series_forecast_stays_constant() {
        let values = vec![0.6; 12];
        let d = embed_values(&values, 2, 1).unwrap();
        let mut net = init_network(&d, SigmaPolicy::Explicit(0.5), 100, 1).unwrap();
        assert_eq!(net.num_centers(), 1);
        net.train(
            &d,
            &TrainConfig {
                epochs: 200,
                learning_rate: 0.25,
                ..Default::default()
            },
        )
        .unwrap();
        let f = forecast_recursive(&net, &values, 10, 1).unwrap();
        for v in f.values {
            assert!((v - 0.6).abs() < 1e-9, "{v}");
        }
    }

    #[test]
    fn ramp_forecast_matches_hand_unrolled_recursion() {
        let values: Vec<f64> = (0..30).map(|i| i as f64 / 29.0).collect();
        let d = embed_values(&values, 2, 1).unwrap();
        let mut net = init_network(&d, SigmaPolicy::MeanPairwiseDistance, 100, 1).unwrap();
        net.train(&d, &TrainConfig { epochs: 50, learning_rate: 1.0, ..Default::default() })
            .unwrap();
        let hist = &values[values.len() - 3..];
        let f = forecast_recursive(&net, hist, 5, 1).unwrap();

        let mut w = hist.to_vec();
        let mut manual = Vec::new();
        for _ in 0..5 {
            let (z, _) = net.forward(&w).unwrap();
            manual.push(z[0]);
            w = vec![w[1], w[2], z[0]];
        }
        assert_eq!(f.values, manual);
        assert_eq!(f.values[0], net.forward(hist).unwrap().0[0]);
    }

    #[test]
    fn document_round_trip() {
        let net = RbfNetwork::new(
            vec![vec![0.1, 1.0 / 3.0], vec![-2.5e-10, 7.0]],
            0.123_456_789_012_345_68,
            vec![vec![1e300, -0.0], vec![std::f64::consts::PI, 2.0 / 3.0]],
        )
        .unwrap();
        let doc = net.to_document();
        assert!(doc.starts_with("agewatch-rbf v1\ninput_dim 2\noutput_dim 2\nsigma "));
        let back = RbfNetwork::from_document(&doc).unwrap();
        for (a, b) in back.weights().iter().flatten().zip(net.weights().iter().flatten()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        assert_eq!(back, net);
    }

    #[test]
    fn minimal_document() {
        let doc = "agewatch-rbf v1\ninput_dim 1\noutput_dim 1\nsigma 1\nM 1\n0\n3\n";
        let net = RbfNetwork::from_document(doc).unwrap();
        let (z, _) = net.forward(&[1.0]).unwrap();
        let expected = 3.0 * rbf_activation(&[1.0], &[0.0], 1.0).unwrap();
        assert_eq!(z[0], expected);
    }

    #[test]
    fn document_errors() {
        let shape = "agewatch-rbf v1\ninput_dim 1\noutput_dim 1\nsigma 1\nM 2\n0\n1\n3\n";
        let e = RbfNetwork::from_document(shape).unwrap_err();
        assert!(e.to_string().contains("weight matrix shape"), "{e}");
        let extra = "agewatch-rbf v1\ninput_dim 1\noutput_dim 1\nsigma 1\nM 1\n0\n3\n4\n";
        let e = RbfNetwork::from_document(extra).unwrap_err();
        assert!(e.to_string().contains("weight matrix shape"), "{e}");
        let dims = "agewatch-rbf v1\ninput_dim 2\noutput_dim 1\nsigma 1\nM 1\n0\n3\n";
        let e = RbfNetwork::from_document(dims).unwrap_err();
        assert!(e.to_string().contains("dimension inconsistency"), "{e}");
        let bad = "agewatch-rbf v1\ninput_dim 1\noutput_dim 1\nsigma abc\nM 1\n0\n3\n";
        let e = RbfNetwork::from_document(bad).unwrap_err();
        assert!(e.to_string().contains("corrupted field"), "{e}");
        let version = "agewatch-rbf v9\ninput_dim 1\n";
        let e = RbfNetwork::from_document(version).unwrap_err();
        assert!(e.to_string().contains("version"), "{e}");
        let neg = "agewatch-rbf v1\ninput_dim 1\noutput_dim 1\nsigma -1\nM 1\n0\n3\n";
        assert!(RbfNetwork::from_document(neg).is_err());
    }
}
