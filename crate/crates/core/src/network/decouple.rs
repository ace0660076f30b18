//! Splitting a hyperbolic network into two real networks.
//!
//! In the idempotent basis the ring product is componentwise, so an affine
//! hyperbolic layer is a pair of independent real affine layers acting on the
//! `ξ` and `η` channels. If the activation is also diagonal in that basis the
//! whole network factors into a `ξ`-network and an `η`-network. The split
//! logistic mixes the channels and does not factor.
//!
//! [`RealNetwork`] carries its own forward pass and backpropagation so that
//! it can serve as an independent oracle for the hyperbolic implementation.

use super::{Activation, HyperbolicNetwork, NetworkError};
use crate::functions::RealActivation;

/// Per-channel scalar activation of a decoupled network.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealMap {
    Identity,
    Logistic,
    /// `t ↦ 2·r(t)`: the `ξ` channel of a holomorphic lift `r(x+y)(1+h)`.
    Twice(RealActivation),
    /// `t ↦ 0`: the `η` channel of a holomorphic lift.
    Zero,
}

impl RealMap {
    pub fn apply(self, t: f64) -> f64 {
        match self {
            RealMap::Identity => t,
            RealMap::Logistic => RealActivation::Logistic.apply(t),
            RealMap::Twice(r) => 2.0 * r.apply(t),
            RealMap::Zero => 0.0,
        }
    }

    pub fn derivative(self, t: f64) -> f64 {
        match self {
            RealMap::Identity => 1.0,
            RealMap::Logistic => RealActivation::Logistic.derivative(t),
            RealMap::Twice(r) => 2.0 * r.derivative(t),
            RealMap::Zero => 0.0,
        }
    }

    /// Diagonal maps `(ξ-map, η-map)` of a hyperbolic activation.
    pub fn split(a: Activation) -> Result<(RealMap, RealMap), NetworkError> {
        match a {
            Activation::Identity => Ok((RealMap::Identity, RealMap::Identity)),
            Activation::IdempotentLogistic => Ok((RealMap::Logistic, RealMap::Logistic)),
            Activation::HoloLift(r) => Ok((RealMap::Twice(r), RealMap::Zero)),
            Activation::SplitLogistic => Err(NetworkError::NotDecoupleable(a)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealLayer {
    pub inputs: usize,
    pub outputs: usize,
    /// Row-major `(outputs, inputs)`.
    pub weights: Vec<f64>,
    pub biases: Vec<f64>,
    pub map: RealMap,
}

impl RealLayer {
    fn pre(&self, input: &[f64]) -> Vec<f64> {
        (0..self.outputs)
            .map(|i| {
                let row = &self.weights[i * self.inputs..(i + 1) * self.inputs];
                row.iter().zip(input).map(|(w, z)| w * z).sum::<f64>() + self.biases[i]
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealNetwork {
    pub layers: Vec<RealLayer>,
}

impl RealNetwork {
    pub fn forward(&self, input: &[f64]) -> Vec<f64> {
        self.layers.iter().fold(input.to_vec(), |z, l| {
            l.pre(&z).into_iter().map(|s| l.map.apply(s)).collect()
        })
    }

    /// Mean over samples and output components of the squared error.
    pub fn loss(&self, inputs: &[Vec<f64>], targets: &[Vec<f64>]) -> f64 {
        let mut total = 0.0;
        for (x, t) in inputs.iter().zip(targets) {
            let y = self.forward(x);
            total += y.iter().zip(t).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() / t.len() as f64;
        }
        total / inputs.len() as f64
    }

    /// One full-batch gradient step; returns the loss before the step.
    pub fn step(&mut self, inputs: &[Vec<f64>], targets: &[Vec<f64>], lr: f64) -> f64 {
        let n = inputs.len() as f64;
        let mut gw: Vec<Vec<f64>> = self
            .layers
            .iter()
            .map(|l| vec![0.0; l.weights.len()])
            .collect();
        let mut gb: Vec<Vec<f64>> = self
            .layers
            .iter()
            .map(|l| vec![0.0; l.biases.len()])
            .collect();
        let mut loss = 0.0;
        for (x, t) in inputs.iter().zip(targets) {
            let mut acts = vec![x.clone()];
            let mut pres = Vec::new();
            for l in &self.layers {
                let s = l.pre(acts.last().expect("non-empty"));
                acts.push(s.iter().map(|&v| l.map.apply(v)).collect());
                pres.push(s);
            }
            let y = acts.last().expect("non-empty");
            let m = t.len() as f64;
            loss += y.iter().zip(t).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() / m;
            let mut delta: Vec<f64> = y
                .iter()
                .zip(t)
                .map(|(a, b)| 2.0 * (a - b) / (m * n))
                .collect();
            for k in (0..self.layers.len()).rev() {
                let l = &self.layers[k];
                let d_pre: Vec<f64> = delta
                    .iter()
                    .zip(&pres[k])
                    .map(|(d, &s)| d * l.map.derivative(s))
                    .collect();
                let a_in = &acts[k];
                let mut next = vec![0.0; l.inputs];
                for i in 0..l.outputs {
                    gb[k][i] += d_pre[i];
                    for j in 0..l.inputs {
                        gw[k][i * l.inputs + j] += d_pre[i] * a_in[j];
                        next[j] += d_pre[i] * l.weights[i * l.inputs + j];
                    }
                }
                delta = next;
            }
        }
        for (k, l) in self.layers.iter_mut().enumerate() {
            for (w, g) in l.weights.iter_mut().zip(&gw[k]) {
                *w -= lr * g;
            }
            for (b, g) in l.biases.iter_mut().zip(&gb[k]) {
                *b -= lr * g;
            }
        }
        loss / n
    }

    /// Runs `epochs` gradient steps and returns the per-epoch loss history
    /// followed by the final loss.
    pub fn train(
        &mut self,
        inputs: &[Vec<f64>],
        targets: &[Vec<f64>],
        epochs: usize,
        lr: f64,
    ) -> (Vec<f64>, f64) {
        let history = (0..epochs)
            .map(|_| self.step(inputs, targets, lr))
            .collect();
        (history, self.loss(inputs, targets))
    }
}

/// Splits `net` into its `(ξ, η)` real networks.
///
/// For every input, `net.forward(z)` equals
/// `from_idempotent(ξ_net.forward(ξ(z)), η_net.forward(η(z)))`. With the
/// holomorphic lift the `η` network outputs zero identically.
pub fn decouple(net: &HyperbolicNetwork) -> Result<(RealNetwork, RealNetwork), NetworkError> {
    let mut xi_layers = Vec::new();
    let mut eta_layers = Vec::new();
    for l in net.layers() {
        let (xi_map, eta_map) = RealMap::split(l.activation())?;
        let build = |pick: fn(crate::number::IdempotentCoords) -> f64, map| RealLayer {
            inputs: l.inputs(),
            outputs: l.outputs(),
            weights: l
                .weights()
                .iter()
                .map(|w| pick(w.to_idempotent()))
                .collect(),
            biases: l.biases().iter().map(|b| pick(b.to_idempotent())).collect(),
            map,
        };
        xi_layers.push(build(|c| c.xi, xi_map));
        eta_layers.push(build(|c| c.eta, eta_map));
    }
    Ok((
        RealNetwork { layers: xi_layers },
        RealNetwork { layers: eta_layers },
    ))
}
