//! Baseline multilayer perceptron: ReLU hidden layers, softmax output,
//! mini-batch SGD on cross-entropy.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::io::NetworkDocument;
use crate::network::{argmax, softmax_in_place, Activation, AffineLayer, Weights};
use crate::point::LabeledPoint;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpConfig {
    pub hidden_layers: Vec<usize>,
    pub learning_rate: f64,
    pub epochs: usize,
    pub batch_size: usize,
    pub init_seed: u64,
}

impl Default for MlpConfig {
    fn default() -> Self {
        Self {
            hidden_layers: vec![32],
            learning_rate: 0.05,
            epochs: 100,
            batch_size: 16,
            init_seed: 0,
        }
    }
}

impl MlpConfig {
    pub fn validate(&self) -> Result<()> {
        if self.hidden_layers.contains(&0) {
            return Err(Error::InvalidConfig(
                "hidden layer widths must be positive".into(),
            ));
        }
        if !(self.learning_rate > 0.0) {
            return Err(Error::InvalidConfig(
                "learning rate must be positive".into(),
            ));
        }
        if self.batch_size == 0 {
            return Err(Error::InvalidConfig("batch size must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mlp {
    pub layers: Vec<AffineLayer>,
}

fn dense(w: &Weights) -> &[f64] {
    match w {
        Weights::Dense { data, .. } => data,
        Weights::Sparse(_) => unreachable!("MLP weights are stored densely"),
    }
}

fn dense_mut(w: &mut Weights) -> &mut [f64] {
    match w {
        Weights::Dense { data, .. } => data,
        Weights::Sparse(_) => unreachable!("MLP weights are stored densely"),
    }
}

impl Mlp {
    /// Weights ~ N(0, 1/fan_in), biases zero.
    pub fn init(n_inputs: usize, n_classes: usize, config: &MlpConfig) -> Result<Self> {
        config.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.init_seed);
        let mut widths = vec![n_inputs];
        widths.extend(&config.hidden_layers);
        widths.push(n_classes);
        let last = widths.len() - 2;
        let layers = widths
            .windows(2)
            .enumerate()
            .map(|(k, w)| {
                let (fan_in, fan_out) = (w[0], w[1]);
                let normal =
                    Normal::new(0.0, 1.0 / (fan_in as f64).sqrt()).expect("finite positive scale");
                let data = (0..fan_in * fan_out)
                    .map(|_| normal.sample(&mut rng))
                    .collect();
                let activation = if k == last {
                    Activation::Softmax
                } else {
                    Activation::Relu
                };
                AffineLayer::new(
                    Weights::dense(fan_out, fan_in, data),
                    vec![0.0; fan_out],
                    activation,
                )
            })
            .collect();
        Ok(Self { layers })
    }

    pub fn n_inputs(&self) -> usize {
        self.layers[0].inputs()
    }

    pub fn n_classes(&self) -> usize {
        self.layers.last().map_or(0, AffineLayer::outputs)
    }

    fn check_input(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n_inputs() {
            return Err(Error::DimensionMismatch {
                expected: self.n_inputs(),
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Softmax class probabilities.
    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_input(x)?;
        Ok(self.layers.iter().fold(x.to_vec(), |h, l| l.apply(&h)))
    }

    pub fn predict(&self, x: &[f64]) -> Result<usize> {
        Ok(argmax(&self.forward(x)?))
    }

    pub fn accuracy(&self, points: &[LabeledPoint]) -> Result<f64> {
        let mut hits = 0;
        for p in points {
            hits += usize::from(self.predict(&p.coords)? == p.label);
        }
        Ok(hits as f64 / points.len().max(1) as f64)
    }

    pub fn parameter_count(&self) -> usize {
        self.layers
            .iter()
            .map(|l| l.outputs() * l.inputs() + l.outputs())
            .sum()
    }

    /// All weights then biases, layer by layer.
    pub fn parameters(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.parameter_count());
        for l in &self.layers {
            out.extend_from_slice(dense(&l.weights));
            out.extend_from_slice(&l.biases);
        }
        out
    }

    pub fn set_parameters(&mut self, params: &[f64]) {
        assert_eq!(params.len(), self.parameter_count());
        let mut at = 0;
        for l in &mut self.layers {
            let w = dense_mut(&mut l.weights);
            w.copy_from_slice(&params[at..at + w.len()]);
            at += w.len();
            let b = l.biases.len();
            l.biases.copy_from_slice(&params[at..at + b]);
            at += b;
        }
    }

    /// Mean cross-entropy over `points`.
    pub fn loss(&self, points: &[LabeledPoint]) -> Result<f64> {
        let mut total = 0.0;
        for p in points {
            total += cross_entropy(&self.forward(&p.coords)?, p.label);
        }
        Ok(total / points.len().max(1) as f64)
    }

    /// Mean cross-entropy and its gradient, flattened like [`Mlp::parameters`].
    pub fn gradient(&self, points: &[LabeledPoint]) -> Result<(f64, Vec<f64>)> {
        let mut grads: Vec<(Vec<f64>, Vec<f64>)> = self
            .layers
            .iter()
            .map(|l| (vec![0.0; l.outputs() * l.inputs()], vec![0.0; l.outputs()]))
            .collect();
        let mut loss = 0.0;
        for p in points {
            self.check_input(&p.coords)?;
            loss += self.accumulate(&p.coords, p.label, &mut grads);
        }
        let scale = 1.0 / points.len().max(1) as f64;
        let mut flat = Vec::with_capacity(self.parameter_count());
        for (gw, gb) in grads {
            flat.extend(gw.into_iter().map(|g| g * scale));
            flat.extend(gb.into_iter().map(|g| g * scale));
        }
        Ok((loss * scale, flat))
    }

    /// Backpropagates one sample into `grads`; returns its loss.
    fn accumulate(&self, x: &[f64], label: usize, grads: &mut [(Vec<f64>, Vec<f64>)]) -> f64 {
        let mut activations = vec![x.to_vec()];
        let mut pre = Vec::with_capacity(self.layers.len());
        for l in &self.layers {
            let z = l.affine(activations.last().unwrap());
            let mut a = z.clone();
            l.activation.apply(&mut a);
            pre.push(z);
            activations.push(a);
        }
        let probs = activations.last().unwrap();
        let loss = cross_entropy(probs, label);

        // softmax + cross-entropy: dL/dz = p - onehot
        let mut delta = probs.clone();
        delta[label] -= 1.0;
        for k in (0..self.layers.len()).rev() {
            let layer = &self.layers[k];
            let input = &activations[k];
            let (gw, gb) = &mut grads[k];
            let cols = layer.inputs();
            for (r, &d) in delta.iter().enumerate() {
                gb[r] += d;
                for (g, &a) in gw[r * cols..(r + 1) * cols].iter_mut().zip(input) {
                    *g += d * a;
                }
            }
            if k == 0 {
                break;
            }
            let w = dense(&layer.weights);
            let below = &pre[k - 1];
            delta = (0..cols)
                .map(|c| {
                    if below[c] <= 0.0 {
                        return 0.0;
                    }
                    delta
                        .iter()
                        .enumerate()
                        .map(|(r, &d)| d * w[r * cols + c])
                        .sum()
                })
                .collect();
        }
        loss
    }

    /// Mini-batch SGD for `config.epochs` epochs with a seeded shuffle each
    /// epoch. Returns the mean training loss of every epoch.
    pub fn train(&mut self, points: &[LabeledPoint], config: &MlpConfig) -> Result<Vec<f64>> {
        config.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.init_seed ^ 0x5eed_5eed_5eed_5eed);
        let mut order: Vec<usize> = (0..points.len()).collect();
        let mut curve = Vec::with_capacity(config.epochs);
        let mut batch = Vec::with_capacity(config.batch_size);
        for epoch in 0..config.epochs {
            order.shuffle(&mut rng);
            let mut epoch_loss = 0.0;
            for chunk in order.chunks(config.batch_size) {
                batch.clear();
                batch.extend(chunk.iter().map(|&i| points[i].clone()));
                let (loss, grad) = self.gradient(&batch)?;
                if !loss.is_finite() {
                    return Err(Error::Diverged {
                        epoch,
                        learning_rate: config.learning_rate,
                    });
                }
                epoch_loss += loss * chunk.len() as f64;
                self.step(&grad, config.learning_rate);
            }
            if !self.parameters().iter().all(|v| v.is_finite()) {
                return Err(Error::Diverged {
                    epoch,
                    learning_rate: config.learning_rate,
                });
            }
            curve.push(epoch_loss / points.len().max(1) as f64);
        }
        Ok(curve)
    }

    fn step(&mut self, grad: &[f64], lr: f64) {
        let mut at = 0;
        for l in &mut self.layers {
            for w in dense_mut(&mut l.weights) {
                *w -= lr * grad[at];
                at += 1;
            }
            for b in &mut l.biases {
                *b -= lr * grad[at];
                at += 1;
            }
        }
    }

    /// Same schema as compiled networks, with `epsilon: null` and no class blocks.
    pub fn to_json(&self) -> String {
        NetworkDocument {
            n_inputs: self.n_inputs(),
            n_classes: self.n_classes(),
            epsilon: None,
            class_blocks: Vec::new(),
            layers: self.layers.clone(),
        }
        .to_json()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc = NetworkDocument::from_json(text)?;
        let layers = doc
            .layers
            .into_iter()
            .map(|mut l| {
                l.weights = l.weights.into_dense();
                l
            })
            .collect();
        Ok(Self { layers })
    }
}

fn cross_entropy(probs: &[f64], label: usize) -> f64 {
    -probs[label].max(f64::MIN_POSITIVE).ln()
}

/// Softmax of raw scores; exposed for callers that work with logits.
pub fn softmax(scores: &[f64]) -> Vec<f64> {
    let mut out = scores.to_vec();
    softmax_in_place(&mut out);
    out
}
