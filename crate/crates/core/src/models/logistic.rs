//! L2-regularized logistic regression via full-batch gradient descent.

use serde::{Deserialize, Serialize};

use super::boosting::sigmoid;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogisticModel {
    pub weights: Vec<f64>,
    pub bias: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogisticParams {
    /// L2 penalty on the weights (the bias is unpenalized).
    pub l2: f64,
    pub max_epochs: usize,
    /// Stop when the loss improves by less than this between epochs.
    pub tol: f64,
}

impl Default for LogisticParams {
    fn default() -> Self {
        Self { l2: 1e-4, max_epochs: 500, tol: 1e-8 }
    }
}

/// Mean log-loss plus the L2 penalty, and its gradient.
fn loss_and_gradient(
    x: &[Vec<f64>],
    y: &[u8],
    weights: &[f64],
    bias: f64,
    l2: f64,
) -> (f64, Vec<f64>, f64) {
    let n = x.len() as f64;
    let p = weights.len();
    let mut grad_w = vec![0.0; p];
    let mut grad_b = 0.0;
    let mut loss = 0.0;
    for (row, &label) in x.iter().zip(y) {
        let z = bias + row.iter().zip(weights).map(|(a, b)| a * b).sum::<f64>();
        let prob = sigmoid(z);
        let margin = if label == 1 { z } else { -z };
        loss += if margin > 0.0 {
            (1.0 + (-margin).exp()).ln()
        } else {
            -margin + (1.0 + margin.exp()).ln()
        };
        let residual = prob - label as f64;
        for (g, v) in grad_w.iter_mut().zip(row) {
            *g += residual * v;
        }
        grad_b += residual;
    }
    loss /= n;
    grad_b /= n;
    for (g, w) in grad_w.iter_mut().zip(weights) {
        *g = *g / n + l2 * w;
        loss += 0.5 * l2 * w * w;
    }
    (loss, grad_w, grad_b)
}

/// Full-batch descent from zero weights with backtracking line search: a
/// step is halved until the loss stops increasing, and the accepted step
/// size carries into the next epoch (gently regrown). Deterministic — no
/// randomness anywhere.
pub(crate) fn fit(x: &[Vec<f64>], y: &[u8], params: &LogisticParams) -> LogisticModel {
    let p = x[0].len();
    let mut weights = vec![0.0; p];
    let mut bias = 0.0;
    let (mut loss, mut grad_w, mut grad_b) =
        loss_and_gradient(x, y, &weights, bias, params.l2);
    let mut step = 1.0;

    for _ in 0..params.max_epochs {
        let mut accepted = false;
        while step > 1e-14 {
            let trial_w: Vec<f64> =
                weights.iter().zip(&grad_w).map(|(w, g)| w - step * g).collect();
            let trial_b = bias - step * grad_b;
            let (trial_loss, trial_gw, trial_gb) =
                loss_and_gradient(x, y, &trial_w, trial_b, params.l2);
            if trial_loss <= loss {
                let improvement = loss - trial_loss;
                weights = trial_w;
                bias = trial_b;
                loss = trial_loss;
                grad_w = trial_gw;
                grad_b = trial_gb;
                step = (step * 2.0).min(1e3);
                accepted = improvement >= params.tol;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    LogisticModel { weights, bias }
}

impl LogisticModel {
    /// Class-1 probability.
    pub fn predict_row(&self, row: &[f64]) -> f64 {
        let z = self.bias
            + row.iter().zip(&self.weights).map(|(a, b)| a * b).sum::<f64>();
        sigmoid(z)
    }

    /// Mean log-loss plus the L2 penalty at this model's parameters, with
    /// the gradient over the weights and the bias. The model is the
    /// evaluation point, so callers can probe arbitrary points in weight
    /// space — e.g. to check the analytic gradient against finite
    /// differences.
    pub fn loss_and_gradient(&self, x: &[Vec<f64>], y: &[u8], l2: f64) -> (f64, Vec<f64>, f64) {
        assert_eq!(x.len(), y.len(), "one label per row");
        loss_and_gradient(x, y, &self.weights, self.bias, l2)
    }
}
