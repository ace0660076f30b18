//! Loss, backpropagation and full-batch gradient descent.

use super::{HyperbolicNetwork, NetworkError};
use crate::number::HyperbolicNumber;

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub input: Vec<HyperbolicNumber>,
    pub target: Vec<HyperbolicNumber>,
}

/// Input/target pairs with uniform dimensions and finite values.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    samples: Vec<Sample>,
}

impl Dataset {
    pub fn new(samples: Vec<Sample>) -> Result<Self, NetworkError> {
        let first = samples
            .first()
            .ok_or_else(|| NetworkError::InvalidDataset("no samples".into()))?;
        let (n, m) = (first.input.len(), first.target.len());
        if n == 0 || m == 0 {
            return Err(NetworkError::InvalidDataset("empty input or target".into()));
        }
        for (k, s) in samples.iter().enumerate() {
            if s.input.len() != n || s.target.len() != m {
                return Err(NetworkError::InvalidDataset(format!(
                    "sample {k} has shape {}x{}, expected {n}x{m}",
                    s.input.len(),
                    s.target.len()
                )));
            }
            if !s.input.iter().chain(&s.target).all(|z| z.is_finite()) {
                return Err(NetworkError::InvalidDataset(format!(
                    "sample {k} is not finite"
                )));
            }
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn input_dim(&self) -> usize {
        self.samples[0].input.len()
    }

    pub fn output_dim(&self) -> usize {
        self.samples[0].target.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainReport {
    /// Loss before each epoch's update.
    pub loss_history: Vec<f64>,
    /// Loss after the last update.
    pub final_loss: f64,
    pub epochs: usize,
}

/// Mean over components of `Δu² + Δv²`.
///
/// The hyperbolic modulus is sign-indefinite, so it is not used here.
pub fn loss_mse(
    pred: &[HyperbolicNumber],
    target: &[HyperbolicNumber],
) -> Result<f64, NetworkError> {
    if pred.len() != target.len() || pred.is_empty() {
        return Err(NetworkError::DimensionMismatch {
            expected: target.len(),
            got: pred.len(),
        });
    }
    let sum: f64 = pred
        .iter()
        .zip(target)
        .map(|(p, t)| {
            let d = *p - *t;
            d.x() * d.x() + d.y() * d.y()
        })
        .sum();
    Ok(sum / pred.len() as f64)
}

/// Mean of [`loss_mse`] over the dataset.
pub fn dataset_loss(net: &HyperbolicNetwork, data: &Dataset) -> Result<f64, NetworkError> {
    let mut total = 0.0;
    for s in data.samples() {
        total += loss_mse(&net.forward(&s.input)?, &s.target)?;
    }
    Ok(total / data.len() as f64)
}

fn check_shapes(net: &HyperbolicNetwork, data: &Dataset) -> Result<(), NetworkError> {
    if net.input_dim() != data.input_dim() {
        return Err(NetworkError::DimensionMismatch {
            expected: net.input_dim(),
            got: data.input_dim(),
        });
    }
    if net.output_dim() != data.output_dim() {
        return Err(NetworkError::DimensionMismatch {
            expected: net.output_dim(),
            got: data.output_dim(),
        });
    }
    Ok(())
}

/// Dataset loss and its gradient with respect to every real parameter, in
/// flat parameter order.
pub fn gradient(net: &HyperbolicNetwork, data: &Dataset) -> Result<(f64, Vec<f64>), NetworkError> {
    check_shapes(net, data)?;
    let layers = net.layers();
    // per-layer accumulators, weights then biases, as hyperbolic pairs
    let mut grads: Vec<(Vec<HyperbolicNumber>, Vec<HyperbolicNumber>)> = layers
        .iter()
        .map(|l| {
            (
                vec![HyperbolicNumber::ZERO; l.weights().len()],
                vec![HyperbolicNumber::ZERO; l.biases().len()],
            )
        })
        .collect();
    let m = net.output_dim() as f64;
    let n = data.len() as f64;
    let mut loss = 0.0;

    for s in data.samples() {
        // forward with caches
        let mut inputs = Vec::with_capacity(layers.len());
        let mut pres = Vec::with_capacity(layers.len());
        let mut z = s.input.clone();
        for l in layers {
            let pre = l.pre_activation(&z);
            let out: Vec<_> = pre.iter().map(|&p| l.activation().apply(p)).collect();
            inputs.push(std::mem::replace(&mut z, out));
            pres.push(pre);
        }
        loss += loss_mse(&z, &s.target)?;

        let scale = 2.0 / (m * n);
        let mut g: Vec<HyperbolicNumber> = z
            .iter()
            .zip(&s.target)
            .map(|(p, t)| (*p - *t).scale(scale))
            .collect();

        for (k, l) in layers.iter().enumerate().rev() {
            let act = l.activation();
            // through the activation: g_pre = Jᵀ g
            let g_pre: Vec<HyperbolicNumber> = pres[k]
                .iter()
                .zip(&g)
                .map(|(&p, &go)| {
                    let j = act.jacobian(p);
                    HyperbolicNumber::raw(
                        j[0][0] * go.x() + j[1][0] * go.y(),
                        j[0][1] * go.x() + j[1][1] * go.y(),
                    )
                })
                .collect();
            // multiplication by a hyperbolic number is a symmetric real map,
            // so both parameter and input gradients are ring products
            let (gw, gb) = &mut grads[k];
            let zin = &inputs[k];
            let mut g_in = vec![HyperbolicNumber::ZERO; l.inputs()];
            for (i, &gp) in g_pre.iter().enumerate() {
                gb[i] = gb[i] + gp;
                for (j, &zj) in zin.iter().enumerate() {
                    gw[i * l.inputs() + j] = gw[i * l.inputs() + j] + gp * zj;
                    g_in[j] = g_in[j] + gp * l.weight(i, j);
                }
            }
            g = g_in;
        }
    }

    let mut flat = Vec::with_capacity(net.num_params());
    for (gw, gb) in &grads {
        for p in gw.iter().chain(gb) {
            flat.push(p.x());
            flat.push(p.y());
        }
    }
    Ok((loss / n, flat))
}

/// Largest parameter magnitude gradient descent may reach.
///
/// Bounded activations keep the loss finite however far the weights run off,
/// so a blow-up of the iterate is caught here instead. A logistic unit already
/// rounds to 0 or 1 for pre-activations beyond ~37, so a weight of this size
/// on unit-scale data has left the range where the loss can still be resolved.
pub const PARAM_LIMIT: f64 = 1e4;

/// Full-batch gradient descent on [`dataset_loss`].
///
/// Fails with [`NetworkError::NonFiniteLoss`] as soon as the loss or any
/// parameter stops being finite, and with [`NetworkError::Diverged`] once a
/// parameter exceeds [`PARAM_LIMIT`] in magnitude.
pub fn train_sgd(
    net: &mut HyperbolicNetwork,
    data: &Dataset,
    epochs: usize,
    lr: f64,
) -> Result<TrainReport, NetworkError> {
    if epochs == 0 {
        return Err(NetworkError::InvalidHyperparameter(
            "epochs must be >= 1".into(),
        ));
    }
    if !(lr > 0.0 && lr.is_finite()) {
        return Err(NetworkError::InvalidHyperparameter(format!(
            "lr must be positive, got {lr}"
        )));
    }
    let mut history = Vec::with_capacity(epochs);
    for epoch in 0..epochs {
        let (loss, grad) = gradient(net, data)?;
        if !loss.is_finite() {
            return Err(NetworkError::NonFiniteLoss { epoch });
        }
        history.push(loss);
        let params: Vec<f64> = net
            .params()
            .iter()
            .zip(&grad)
            .map(|(p, g)| p - lr * g)
            .collect();
        net.set_params(&params)?;
        if !net.is_finite() {
            return Err(NetworkError::NonFiniteLoss { epoch });
        }
        let max_abs = params.iter().fold(0.0_f64, |m, p| m.max(p.abs()));
        if max_abs > PARAM_LIMIT {
            return Err(NetworkError::Diverged {
                epoch,
                max_abs,
                limit: PARAM_LIMIT,
            });
        }
    }
    let final_loss = dataset_loss(net, data)?;
    if !final_loss.is_finite() {
        return Err(NetworkError::NonFiniteLoss { epoch: epochs });
    }
    Ok(TrainReport {
        loss_history: history,
        final_loss,
        epochs,
    })
}

/// Gradients below this magnitude are compared absolutely.
const GRAD_CHECK_FLOOR: f64 = 1e-3;

/// Largest relative disagreement between the backprop gradient and a central
/// finite difference of the loss, over every real parameter.
///
/// Relative error is `|a - b| / max(|a|, |b|, 1e-3)`.
pub fn gradient_check(
    net: &HyperbolicNetwork,
    data: &Dataset,
    step: f64,
) -> Result<f64, NetworkError> {
    let (_, analytic) = gradient(net, data)?;
    let base = net.params();
    let mut probe = net.clone();
    let mut worst = 0.0f64;
    for (k, &a) in analytic.iter().enumerate() {
        let mut p = base.clone();
        p[k] = base[k] + step;
        probe.set_params(&p)?;
        let plus = dataset_loss(&probe, data)?;
        p[k] = base[k] - step;
        probe.set_params(&p)?;
        let minus = dataset_loss(&probe, data)?;
        let numeric = (plus - minus) / (2.0 * step);
        let denom = a.abs().max(numeric.abs()).max(GRAD_CHECK_FLOOR);
        worst = worst.max((a - numeric).abs() / denom);
    }
    Ok(worst)
}
