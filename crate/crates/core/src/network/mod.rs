//! Feed-forward networks with hyperbolic-number weights.
//!
//! Each layer computes `s_i = Σ_j W_ij·z_j + b_i` in ring arithmetic and then
//! applies an activation from the function catalog to every component.
//! Training treats the network as a real map `ℝ^{2n} → ℝ^{2m}`, each
//! hyperbolic parameter contributing two real parameters.
//!
//! Flat parameter order (used by checkpoints and gradient checks): layer by
//! layer, the weights row-major `(out, in)` as `x, y` pairs, then the biases
//! as `x, y` pairs.

mod decouple;
mod io;
mod train;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::functions::{logistic, logistic_prime, RealActivation};
use crate::number::HyperbolicNumber;

pub use decouple::{decouple, RealLayer, RealMap, RealNetwork};
pub use io::{
    decision_boundary, read_boundary_csv, read_dataset_csv, write_boundary_csv, write_dataset_csv,
    BoundaryRow, Checkpoint, DataError,
};
pub use train::{
    dataset_loss, gradient, gradient_check, loss_mse, train_sgd, Dataset, Sample, TrainReport,
    PARAM_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetworkError {
    #[error("invalid layer dimensions {0:?}")]
    InvalidDims(Vec<usize>),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("activation {0} mixes the idempotent channels and cannot be decoupled")]
    NotDecoupleable(Activation),
    #[error("loss became non-finite at epoch {epoch}")]
    NonFiniteLoss { epoch: usize },
    #[error("parameters diverged at epoch {epoch}: |param| = {max_abs:e} exceeds {limit:e}")]
    Diverged {
        epoch: usize,
        max_abs: f64,
        limit: f64,
    },
    #[error("invalid hyperparameter: {0}")]
    InvalidHyperparameter(String),
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
    #[error("unknown activation {0:?}")]
    UnknownActivation(String),
    #[error("expected {expected} parameters, got {got}")]
    ParameterCount { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Activation {
    /// `u = v = r(x + y)`.
    HoloLift(RealActivation),
    /// `σ(ξ)·n1 + σ(η)·n2`.
    IdempotentLogistic,
    /// `σ(x) + h·σ(y)`.
    SplitLogistic,
    Identity,
}

impl Activation {
    pub const ALL: [Activation; 5] = [
        Activation::HoloLift(RealActivation::Logistic),
        Activation::HoloLift(RealActivation::Tanh),
        Activation::IdempotentLogistic,
        Activation::SplitLogistic,
        Activation::Identity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Activation::HoloLift(RealActivation::Logistic) => "holo",
            Activation::HoloLift(RealActivation::Tanh) => "holo-tanh",
            Activation::HoloLift(RealActivation::Identity) => "holo-identity",
            Activation::IdempotentLogistic => "idem-logistic",
            Activation::SplitLogistic => "split-logistic",
            Activation::Identity => "identity",
        }
    }

    pub fn apply(self, z: HyperbolicNumber) -> HyperbolicNumber {
        let (x, y) = (z.x(), z.y());
        match self {
            Activation::HoloLift(r) => {
                let s = r.apply(x + y);
                HyperbolicNumber::raw(s, s)
            }
            Activation::IdempotentLogistic => {
                let a = logistic(x + y);
                let b = logistic(x - y);
                HyperbolicNumber::raw(0.5 * (a + b), 0.5 * (a - b))
            }
            Activation::SplitLogistic => HyperbolicNumber::raw(logistic(x), logistic(y)),
            Activation::Identity => z,
        }
    }

    /// `∂(u, v) / ∂(x, y)` at the pre-activation `z`, as `[[u_x, u_y], [v_x, v_y]]`.
    pub fn jacobian(self, z: HyperbolicNumber) -> [[f64; 2]; 2] {
        let (x, y) = (z.x(), z.y());
        match self {
            Activation::HoloLift(r) => {
                let d = r.derivative(x + y);
                [[d, d], [d, d]]
            }
            Activation::IdempotentLogistic => {
                let a = logistic_prime(x + y);
                let b = logistic_prime(x - y);
                let (p, q) = (0.5 * (a + b), 0.5 * (a - b));
                [[p, q], [q, p]]
            }
            Activation::SplitLogistic => [[logistic_prime(x), 0.0], [0.0, logistic_prime(y)]],
            Activation::Identity => [[1.0, 0.0], [0.0, 1.0]],
        }
    }
}

impl fmt::Display for Activation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Activation {
    type Err = NetworkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let a = match s {
            "holo" | "holo-logistic" => Activation::HoloLift(RealActivation::Logistic),
            "holo-tanh" => Activation::HoloLift(RealActivation::Tanh),
            "holo-identity" => Activation::HoloLift(RealActivation::Identity),
            "idem-logistic" => Activation::IdempotentLogistic,
            "split-logistic" => Activation::SplitLogistic,
            "identity" => Activation::Identity,
            other => return Err(NetworkError::UnknownActivation(other.to_string())),
        };
        Ok(a)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HyperbolicLayer {
    inputs: usize,
    outputs: usize,
    /// Row-major `(outputs, inputs)`.
    weights: Vec<HyperbolicNumber>,
    biases: Vec<HyperbolicNumber>,
    activation: Activation,
}

impl HyperbolicLayer {
    pub fn new(
        inputs: usize,
        outputs: usize,
        weights: Vec<HyperbolicNumber>,
        biases: Vec<HyperbolicNumber>,
        activation: Activation,
    ) -> Result<Self, NetworkError> {
        if inputs == 0 || outputs == 0 {
            return Err(NetworkError::InvalidDims(vec![inputs, outputs]));
        }
        if weights.len() != inputs * outputs {
            return Err(NetworkError::DimensionMismatch {
                expected: inputs * outputs,
                got: weights.len(),
            });
        }
        if biases.len() != outputs {
            return Err(NetworkError::DimensionMismatch {
                expected: outputs,
                got: biases.len(),
            });
        }
        Ok(Self {
            inputs,
            outputs,
            weights,
            biases,
            activation,
        })
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn weight(&self, out: usize, inp: usize) -> HyperbolicNumber {
        self.weights[out * self.inputs + inp]
    }

    pub fn weights(&self) -> &[HyperbolicNumber] {
        &self.weights
    }

    pub fn biases(&self) -> &[HyperbolicNumber] {
        &self.biases
    }

    pub fn activation(&self) -> Activation {
        self.activation
    }

    /// Affine part only.
    pub fn pre_activation(&self, input: &[HyperbolicNumber]) -> Vec<HyperbolicNumber> {
        (0..self.outputs)
            .map(|i| {
                let row = &self.weights[i * self.inputs..(i + 1) * self.inputs];
                row.iter()
                    .zip(input)
                    .map(|(&w, &z)| w * z)
                    .sum::<HyperbolicNumber>()
                    + self.biases[i]
            })
            .collect()
    }

    pub fn forward(&self, input: &[HyperbolicNumber]) -> Vec<HyperbolicNumber> {
        self.pre_activation(input)
            .into_iter()
            .map(|s| self.activation.apply(s))
            .collect()
    }

    fn num_params(&self) -> usize {
        2 * (self.weights.len() + self.biases.len())
    }

    fn is_finite(&self) -> bool {
        self.weights
            .iter()
            .chain(&self.biases)
            .all(|p| p.is_finite())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HyperbolicNetwork {
    layers: Vec<HyperbolicLayer>,
    seed: u64,
}

impl HyperbolicNetwork {
    /// Random initialization: every real component of every weight is drawn
    /// uniformly from `[-1/√fan_in, 1/√fan_in]` by a ChaCha8 stream seeded
    /// with `seed`, in flat parameter order. Biases start at zero.
    pub fn init(dims: &[usize], activation: Activation, seed: u64) -> Result<Self, NetworkError> {
        validate_dims(dims)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let layers = dims
            .windows(2)
            .map(|w| {
                let (fan_in, fan_out) = (w[0], w[1]);
                let bound = 1.0 / (fan_in as f64).sqrt();
                let weights = (0..fan_in * fan_out)
                    .map(|_| {
                        let x = rng.gen_range(-bound..=bound);
                        let y = rng.gen_range(-bound..=bound);
                        HyperbolicNumber::raw(x, y)
                    })
                    .collect();
                let biases = vec![HyperbolicNumber::ZERO; fan_out];
                HyperbolicLayer::new(fan_in, fan_out, weights, biases, activation)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { layers, seed })
    }

    pub fn from_layers(layers: Vec<HyperbolicLayer>, seed: u64) -> Result<Self, NetworkError> {
        if layers.is_empty() {
            return Err(NetworkError::InvalidDims(vec![]));
        }
        for pair in layers.windows(2) {
            if pair[0].outputs != pair[1].inputs {
                return Err(NetworkError::DimensionMismatch {
                    expected: pair[0].outputs,
                    got: pair[1].inputs,
                });
            }
        }
        Ok(Self { layers, seed })
    }

    /// Rebuilds a network from dims, one activation and a flat parameter vector.
    pub fn from_params(
        dims: &[usize],
        activation: Activation,
        seed: u64,
        params: &[f64],
    ) -> Result<Self, NetworkError> {
        let mut net = Self::init(dims, activation, seed)?;
        net.set_params(params)?;
        Ok(net)
    }

    pub fn layers(&self) -> &[HyperbolicLayer] {
        &self.layers
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dims(&self) -> Vec<usize> {
        std::iter::once(self.layers[0].inputs)
            .chain(self.layers.iter().map(|l| l.outputs))
            .collect()
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].inputs
    }

    pub fn output_dim(&self) -> usize {
        self.layers[self.layers.len() - 1].outputs
    }

    pub fn forward(
        &self,
        input: &[HyperbolicNumber],
    ) -> Result<Vec<HyperbolicNumber>, NetworkError> {
        if input.len() != self.input_dim() {
            return Err(NetworkError::DimensionMismatch {
                expected: self.input_dim(),
                got: input.len(),
            });
        }
        let mut z = input.to_vec();
        for layer in &self.layers {
            z = layer.forward(&z);
        }
        Ok(z)
    }

    pub fn num_params(&self) -> usize {
        self.layers.iter().map(HyperbolicLayer::num_params).sum()
    }

    pub fn params(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.num_params());
        for l in &self.layers {
            for p in l.weights.iter().chain(&l.biases) {
                out.push(p.x());
                out.push(p.y());
            }
        }
        out
    }

    pub fn set_params(&mut self, params: &[f64]) -> Result<(), NetworkError> {
        if params.len() != self.num_params() {
            return Err(NetworkError::ParameterCount {
                expected: self.num_params(),
                got: params.len(),
            });
        }
        let mut it = params.chunks_exact(2);
        for l in &mut self.layers {
            for p in l.weights.iter_mut().chain(l.biases.iter_mut()) {
                let c = it.next().expect("length checked");
                *p = HyperbolicNumber::raw(c[0], c[1]);
            }
        }
        Ok(())
    }

    pub fn is_finite(&self) -> bool {
        self.layers.iter().all(HyperbolicLayer::is_finite)
    }
}

fn validate_dims(dims: &[usize]) -> Result<(), NetworkError> {
    if dims.len() < 2 || dims.contains(&0) {
        return Err(NetworkError::InvalidDims(dims.to_vec()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hn(x: f64, y: f64) -> HyperbolicNumber {
        HyperbolicNumber::new(x, y).unwrap()
    }

    fn single(w: HyperbolicNumber, b: HyperbolicNumber, act: Activation) -> HyperbolicNetwork {
        let layer = HyperbolicLayer::new(1, 1, vec![w], vec![b], act).unwrap();
        HyperbolicNetwork::from_layers(vec![layer], 0).unwrap()
    }

    #[test]
    fn init_is_deterministic_and_bounded() {
        let act = Activation::HoloLift(RealActivation::Logistic);
        let a = HyperbolicNetwork::init(&[2, 1], act, 7).unwrap();
        let b = HyperbolicNetwork::init(&[2, 1], act, 7).unwrap();
        assert_eq!(a, b);
        let pa: Vec<u64> = a.params().iter().map(|p| p.to_bits()).collect();
        let pb: Vec<u64> = b.params().iter().map(|p| p.to_bits()).collect();
        assert_eq!(pa, pb);
        assert_ne!(a, HyperbolicNetwork::init(&[2, 1], act, 8).unwrap());

        let net = HyperbolicNetwork::init(&[4, 3, 2], act, 1).unwrap();
        assert_eq!(net.num_params(), 2 * (12 + 3 + 6 + 2));
        assert_eq!(net.dims(), vec![4, 3, 2]);
        for w in net.layers()[0].weights() {
            assert!(w.x().abs() <= 0.5 && w.y().abs() <= 0.5);
        }
        for w in net.layers()[1].weights() {
            assert!(w.x().abs() <= 1.0 / 3f64.sqrt());
        }
        assert!(net
            .layers()
            .iter()
            .all(|l| l.biases().iter().all(|b| *b == HyperbolicNumber::ZERO)));
    }

    #[test]
    fn init_rejects_bad_dims() {
        let act = Activation::Identity;
        assert!(matches!(
            HyperbolicNetwork::init(&[], act, 0),
            Err(NetworkError::InvalidDims(_))
        ));
        assert!(matches!(
            HyperbolicNetwork::init(&[3], act, 0),
            Err(NetworkError::InvalidDims(_))
        ));
        assert!(matches!(
            HyperbolicNetwork::init(&[2, 0, 1], act, 0),
            Err(NetworkError::InvalidDims(_))
        ));
    }

    #[test]
    fn forward_examples() {
        let holo = Activation::HoloLift(RealActivation::Logistic);
        let net = single(hn(1.0, 0.0), HyperbolicNumber::ZERO, holo);
        assert_eq!(net.forward(&[hn(0.0, 0.0)]).unwrap(), vec![hn(0.5, 0.5)]);

        let net = single(hn(0.0, 1.0), HyperbolicNumber::ZERO, Activation::Identity);
        assert_eq!(net.forward(&[hn(1.0, 0.0)]).unwrap(), vec![hn(0.0, 1.0)]);

        let net = single(
            HyperbolicNumber::ZERO,
            HyperbolicNumber::ZERO,
            Activation::SplitLogistic,
        );
        assert_eq!(net.forward(&[hn(3.0, -2.0)]).unwrap(), vec![hn(0.5, 0.5)]);

        assert_eq!(
            net.forward(&[hn(1.0, 0.0), hn(1.0, 0.0)]),
            Err(NetworkError::DimensionMismatch {
                expected: 1,
                got: 2
            })
        );
    }

    #[test]
    fn params_round_trip() {
        let mut net =
            HyperbolicNetwork::init(&[2, 2, 1], Activation::IdempotentLogistic, 3).unwrap();
        let p = net.params();
        let doubled: Vec<f64> = p.iter().map(|v| 2.0 * v).collect();
        net.set_params(&doubled).unwrap();
        assert_eq!(net.params(), doubled);
        // first weight of layer 0 sits first
        assert_eq!(net.layers()[0].weight(0, 0).x(), doubled[0]);
        assert_eq!(net.layers()[0].weight(0, 1).y(), doubled[3]);
        assert!(net.set_params(&p[1..]).is_err());
    }

    #[test]
    fn activation_names_round_trip() {
        for a in Activation::ALL {
            assert_eq!(a.name().parse::<Activation>().unwrap(), a);
        }
        assert!("relu".parse::<Activation>().is_err());
    }

    #[test]
    fn jacobians_match_finite_differences() {
        let h = 1e-6;
        for a in Activation::ALL {
            for &(x, y) in &[(0.3, -0.2), (-1.1, 0.7), (2.0, 1.5)] {
                let j = a.jacobian(hn(x, y));
                let dx = (a.apply(hn(x + h, y)) - a.apply(hn(x - h, y))).scale(0.5 / h);
                let dy = (a.apply(hn(x, y + h)) - a.apply(hn(x, y - h))).scale(0.5 / h);
                for (got, want) in [
                    (j[0][0], dx.x()),
                    (j[1][0], dx.y()),
                    (j[0][1], dy.x()),
                    (j[1][1], dy.y()),
                ] {
                    assert!((got - want).abs() < 1e-8, "{a}: {got} vs {want}");
                }
            }
        }
    }
}
