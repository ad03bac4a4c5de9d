//! One-hidden-layer perceptron used as the comparison baseline.
//!
//! `Z = W2 * tanh(W1 * x + b1) + b2`, trained by plain backpropagation on
//! the same per-sample loss as the RBF network, `(1/J) * sum_j (t_j - Z_j)^2`,
//! with the same [`TrainConfig`]. Parameters move by `-eta * grad` after
//! each exemplar, or by `-eta * sum_q grad_q` once per epoch in batch mode.

use crate::error::{ensure_dim, invalid, Error, Result};
use crate::model::{run_epochs, Predictor, TrainConfig, TrainMode, TrainReport};
use crate::persist;
use crate::synthload::prng::XorShift64Star;
use crate::timeseries::WindowedDataset;

pub const DEFAULT_HIDDEN: usize = 8;

const MAGIC: &str = "agewatch-mlp";

#[derive(Debug, Clone, PartialEq)]
pub struct MlpNetwork {
    /// H rows of d.
    w1: Vec<Vec<f64>>,
    b1: Vec<f64>,
    /// J rows of H.
    w2: Vec<Vec<f64>>,
    b2: Vec<f64>,
}

impl MlpNetwork {
    /// Seeded init: layer weights uniform in `±0.5/sqrt(fan_in)`, biases 0.
    pub fn new(input_dim: usize, hidden_dim: usize, output_dim: usize, seed: u64) -> Result<Self> {
        if input_dim == 0 || hidden_dim == 0 || output_dim == 0 {
            return Err(invalid("MLP dimensions must all be >= 1"));
        }
        let mut rng = XorShift64Star::new(seed);
        let mut layer = |rows: usize, cols: usize| -> Vec<Vec<f64>> {
            let r = 0.5 / (cols as f64).sqrt();
            (0..rows)
                .map(|_| (0..cols).map(|_| rng.uniform(-r, r)).collect())
                .collect()
        };
        let w1 = layer(hidden_dim, input_dim);
        let w2 = layer(output_dim, hidden_dim);
        Self::from_parts(w1, vec![0.0; hidden_dim], w2, vec![0.0; output_dim])
    }

    pub fn from_parts(
        w1: Vec<Vec<f64>>,
        b1: Vec<f64>,
        w2: Vec<Vec<f64>>,
        b2: Vec<f64>,
    ) -> Result<Self> {
        let h = w1.len();
        if h == 0 || b1.len() != h {
            return Err(invalid("hidden layer shape"));
        }
        let d = w1[0].len();
        if d == 0 || w1.iter().any(|r| r.len() != d) {
            return Err(invalid("hidden weight matrix shape"));
        }
        let j = w2.len();
        if j == 0 || b2.len() != j || w2.iter().any(|r| r.len() != h) {
            return Err(invalid("output weight matrix shape"));
        }
        let net = Self { w1, b1, w2, b2 };
        if net.params().iter().any(|v| !v.is_finite()) {
            return Err(invalid("network parameters must be finite"));
        }
        Ok(net)
    }

    pub fn input_dim(&self) -> usize {
        self.w1[0].len()
    }

    pub fn hidden_dim(&self) -> usize {
        self.w1.len()
    }

    pub fn output_dim(&self) -> usize {
        self.w2.len()
    }

    /// All parameters flattened as `W1 (row-major), b1, W2 (row-major), b2`.
    pub fn params(&self) -> Vec<f64> {
        self.w1
            .iter()
            .flatten()
            .chain(&self.b1)
            .chain(self.w2.iter().flatten())
            .chain(&self.b2)
            .copied()
            .collect()
    }

    pub fn num_params(&self) -> usize {
        let (d, h, j) = (self.input_dim(), self.hidden_dim(), self.output_dim());
        h * d + h + j * h + j
    }

    /// Inverse of [`params`](Self::params).
    pub fn set_params(&mut self, flat: &[f64]) -> Result<()> {
        ensure_dim(self.num_params(), flat.len())?;
        let mut it = flat.iter().copied();
        for v in self
            .w1
            .iter_mut()
            .flatten()
            .chain(self.b1.iter_mut())
            .chain(self.w2.iter_mut().flatten())
            .chain(self.b2.iter_mut())
        {
            *v = it.next().unwrap_or_default();
        }
        Ok(())
    }

    fn hidden(&self, x: &[f64]) -> Vec<f64> {
        self.w1
            .iter()
            .zip(&self.b1)
            .map(|(row, b)| (row.iter().zip(x).map(|(w, xi)| w * xi).sum::<f64>() + b).tanh())
            .collect()
    }

    fn output(&self, a: &[f64]) -> Vec<f64> {
        self.w2
            .iter()
            .zip(&self.b2)
            .map(|(row, b)| row.iter().zip(a).map(|(w, ah)| w * ah).sum::<f64>() + b)
            .collect()
    }

    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        ensure_dim(self.input_dim(), x.len())?;
        Ok(self.output(&self.hidden(x)))
    }

    pub fn sample_error(&self, x: &[f64], target: &[f64]) -> Result<f64> {
        ensure_dim(self.output_dim(), target.len())?;
        let z = self.forward(x)?;
        Ok(loss(&z, target))
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

    /// Backpropagated gradient of the per-sample loss, laid out like
    /// [`params`](Self::params).
    pub fn gradient(&self, x: &[f64], target: &[f64]) -> Result<Vec<f64>> {
        ensure_dim(self.input_dim(), x.len())?;
        ensure_dim(self.output_dim(), target.len())?;
        let mut grad = vec![0.0; self.num_params()];
        self.accumulate_gradient(x, target, &mut grad);
        Ok(grad)
    }

    /// Adds this sample's gradient into `grad`. Dimensions are checked by callers.
    fn accumulate_gradient(&self, x: &[f64], target: &[f64], grad: &mut [f64]) {
        let (d, h) = (self.input_dim(), self.hidden_dim());
        let j_dim = self.output_dim();
        let a = self.hidden(x);
        let z = self.output(&a);
        // dE/dZ_j
        let g: Vec<f64> = z
            .iter()
            .zip(target)
            .map(|(zj, tj)| -2.0 / j_dim as f64 * (tj - zj))
            .collect();

        let (g_w1, rest) = grad.split_at_mut(h * d);
        let (g_b1, rest) = rest.split_at_mut(h);
        let (g_w2, g_b2) = rest.split_at_mut(j_dim * h);

        for (hi, &ah) in a.iter().enumerate() {
            let back: f64 = g.iter().zip(&self.w2).map(|(gj, row)| gj * row[hi]).sum();
            let delta = back * (1.0 - ah * ah);
            for (gw, xi) in g_w1[hi * d..(hi + 1) * d].iter_mut().zip(x) {
                *gw += delta * xi;
            }
            g_b1[hi] += delta;
        }
        for (ji, gj) in g.iter().enumerate() {
            for (gw, ah) in g_w2[ji * h..(ji + 1) * h].iter_mut().zip(&a) {
                *gw += gj * ah;
            }
            g_b2[ji] += gj;
        }
    }

    pub fn train(&mut self, dataset: &WindowedDataset, config: &TrainConfig) -> Result<TrainReport> {
        ensure_dim(self.output_dim(), 1)?;
        ensure_dim(self.input_dim(), dataset.input_dim())?;
        let inputs = dataset.inputs();
        let targets = dataset.targets();
        let eta = config.learning_rate;
        let mode = config.mode;
        let net = std::cell::RefCell::new(self.clone());
        let mut grad = vec![0.0; self.num_params()];

        let report = run_epochs(
            config,
            dataset.len(),
            |order| {
                let mut net = net.borrow_mut();
                let mut params = net.params();
                match mode {
                    TrainMode::PerSample => {
                        for &q in order {
                            grad.iter_mut().for_each(|g| *g = 0.0);
                            net.accumulate_gradient(&inputs[q], &targets[q..=q], &mut grad);
                            for (p, g) in params.iter_mut().zip(&grad) {
                                *p -= eta * g;
                            }
                            let _ = net.set_params(&params);
                        }
                    }
                    TrainMode::Batch => {
                        grad.iter_mut().for_each(|g| *g = 0.0);
                        for &q in order {
                            net.accumulate_gradient(&inputs[q], &targets[q..=q], &mut grad);
                        }
                        for (p, g) in params.iter_mut().zip(&grad) {
                            *p -= eta * g;
                        }
                        let _ = net.set_params(&params);
                    }
                }
            },
            || {
                let net = net.borrow();
                inputs
                    .iter()
                    .zip(targets)
                    .map(|(x, t)| loss(&net.output(&net.hidden(x)), std::slice::from_ref(t)))
                    .sum::<f64>()
                    / inputs.len() as f64
            },
        );
        *self = net.into_inner();
        report
    }

    /// Serializes to the `agewatch-mlp v1` text format: dimensions, then
    /// W1 rows, b1, W2 rows, b2.
    pub fn to_document(&self) -> String {
        let mut w = persist::Writer::new(MAGIC);
        w.field("input_dim", self.input_dim());
        w.field("hidden_dim", self.hidden_dim());
        w.field("output_dim", self.output_dim());
        for r in &self.w1 {
            w.row(r);
        }
        w.row(&self.b1);
        for r in &self.w2 {
            w.row(r);
        }
        w.row(&self.b2);
        w.finish()
    }

    pub fn from_document(text: &str) -> Result<Self> {
        let mut r = persist::Reader::new(text, MAGIC)?;
        let d = r.usize("input_dim")?;
        let h = r.usize("hidden_dim")?;
        let j = r.usize("output_dim")?;
        if d == 0 || h == 0 || j == 0 {
            return Err(Error::ModelFormat("dimension inconsistency: zero-sized network".into()));
        }
        let w1 = r.matrix(h, d, "hidden weight")?;
        let b1 = r.matrix(1, h, "hidden bias")?.remove(0);
        let w2 = r.matrix(j, h, "output weight")?;
        let b2 = r.matrix(1, j, "output bias")?.remove(0);
        r.expect_end("output bias")?;
        Self::from_parts(w1, b1, w2, b2).map_err(|e| Error::ModelFormat(e.to_string()))
    }
}

impl Predictor for MlpNetwork {
    fn input_dim(&self) -> usize {
        MlpNetwork::input_dim(self)
    }

    fn output_dim(&self) -> usize {
        MlpNetwork::output_dim(self)
    }

    fn predict(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.forward(x)
    }
}

fn loss(z: &[f64], t: &[f64]) -> f64 {
    z.iter().zip(t).map(|(a, b)| (b - a) * (b - a)).sum::<f64>() / z.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timeseries::embed_values;

    fn zero_net(d: usize, h: usize, j: usize) -> MlpNetwork {
        MlpNetwork::from_parts(vec![vec![0.0; d]; h], vec![0.0; h], vec![vec![0.0; h]; j], vec![0.0; j])
            .unwrap()
    }

    #[test]
    fn forward_examples() {
        assert_eq!(zero_net(3, 4, 1).forward(&[1.0, 2.0, 3.0]).unwrap(), vec![0.0]);

        let mut net = zero_net(2, 3, 1);
        net.b2 = vec![3.0];
        assert_eq!(net.forward(&[-5.0, 9.0]).unwrap(), vec![3.0]);

        let net = MlpNetwork::from_parts(vec![vec![1.0]], vec![0.0], vec![vec![1.0]], vec![0.0])
            .unwrap();
        let z = net.forward(&[0.5]).unwrap()[0];
        assert!((z - 0.46211715726000974).abs() < 1e-15);
        assert!(net.forward(&[0.5, 0.5]).is_err());
    }

    #[test]
    fn init_is_seeded_and_bounded() {
        let a = MlpNetwork::new(4, 8, 1, 7).unwrap();
        let b = MlpNetwork::new(4, 8, 1, 7).unwrap();
        let c = MlpNetwork::new(4, 8, 1, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.w1.iter().flatten().all(|w| w.abs() <= 0.25));
        assert!(a.w2.iter().flatten().all(|w| w.abs() <= 0.5 / 8f64.sqrt()));
        assert!(a.b1.iter().chain(&a.b2).all(|&b| b == 0.0));
    }

    #[test]
    fn params_round_trip() {
        let mut net = MlpNetwork::new(3, 4, 2, 1).unwrap();
        let p = net.params();
        assert_eq!(p.len(), net.num_params());
        let doubled: Vec<f64> = p.iter().map(|v| v * 2.0).collect();
        net.set_params(&doubled).unwrap();
        assert_eq!(net.params(), doubled);
        assert!(net.set_params(&p[1..]).is_err());
    }

    #[test]
    fn zero_epochs_is_noop() {
        let d = embed_values(&[0.1, 0.2, 0.3, 0.4, 0.5], 1, 1).unwrap();
        let mut net = MlpNetwork::new(2, 4, 1, 3).unwrap();
        let before = net.clone();
        let rep = net.train(&d, &TrainConfig { epochs: 0, ..Default::default() }).unwrap();
        assert_eq!(rep.epochs_run, 0);
        assert_eq!(net, before);
    }

    #[test]
    fn training_reduces_loss_and_is_deterministic() {
        let values: Vec<f64> = (0..60).map(|i| 0.5 + 0.4 * (i as f64 * 0.3).sin()).collect();
        let d = embed_values(&values, 3, 1).unwrap();
        let cfg = TrainConfig {
            epochs: 200,
            learning_rate: 0.05,
            ..Default::default()
        };
        let mut a = MlpNetwork::new(4, 8, 1, 11).unwrap();
        let initial = a.mse(&d).unwrap();
        let ra = a.train(&d, &cfg).unwrap();
        assert!(ra.final_mse().unwrap() < initial / 10.0);

        let mut b = MlpNetwork::new(4, 8, 1, 11).unwrap();
        let rb = b.train(&d, &cfg).unwrap();
        assert_eq!(ra, rb);
        assert_eq!(a.params(), b.params());

        let mut c = MlpNetwork::new(4, 8, 1, 11).unwrap();
        let rc = c
            .train(&d, &TrainConfig { mode: TrainMode::Batch, learning_rate: 0.005, ..cfg })
            .unwrap();
        assert!(rc.final_mse().unwrap() < initial);
    }

    #[test]
    fn document_round_trip() {
        let net = MlpNetwork::new(3, 5, 2, 99).unwrap();
        let doc = net.to_document();
        assert!(doc.starts_with("agewatch-mlp v1\n"));
        let back = MlpNetwork::from_document(&doc).unwrap();
        assert_eq!(
            back.params().iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
            net.params().iter().map(|v| v.to_bits()).collect::<Vec<_>>()
        );
        let truncated: String = doc.lines().take(6).map(|l| format!("{l}\n")).collect();
        assert!(MlpNetwork::from_document(&truncated).is_err());
        assert!(MlpNetwork::from_document(&doc.replace("agewatch-mlp", "agewatch-rbf")).is_err());
    }
}
