//! Gradient boosting with logistic loss and Newton-step leaves.

use serde::{Deserialize, Serialize};

use super::tree::{fit_regression, normalize_importances, TreeConfig, TreeModel};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoostingModel {
    /// Log-odds of the training base rate.
    pub init_score: f64,
    pub learning_rate: f64,
    pub stages: Vec<TreeModel>,
    pub n_features: usize,
    /// Impurity decrease summed over all stages, normalized to sum to 1.
    pub importances: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoostingParams {
    pub n_stages: usize,
    pub max_depth: usize,
    pub learning_rate: f64,
    pub min_leaf: usize,
}

impl Default for BoostingParams {
    fn default() -> Self {
        Self { n_stages: 100, max_depth: 3, learning_rate: 0.1, min_leaf: 1 }
    }
}

pub(crate) fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Fits the additive model stage by stage. Each stage grows a squared-error
/// tree on the current gradients `y - p`; its leaves hold the Newton step
/// `Σ(y - p) / Σ p(1-p)`, scaled into the score by the learning rate. No
/// randomness is involved: boosting is deterministic regardless of seed.
pub(crate) fn fit(x: &[Vec<f64>], y: &[u8], params: &BoostingParams) -> BoostingModel {
    let n = x.len();
    let p = x[0].len();
    let base_rate = y.iter().map(|&v| v as f64).sum::<f64>() / n as f64;
    let init_score = (base_rate / (1.0 - base_rate)).ln();

    let cfg = TreeConfig {
        max_depth: Some(params.max_depth),
        min_leaf: params.min_leaf,
        max_features: None,
    };

    let mut scores = vec![init_score; n];
    let mut stages = Vec::with_capacity(params.n_stages);
    let mut summed_importances = vec![0.0; p];
    let mut grad = vec![0.0; n];
    let mut hess = vec![0.0; n];
    for _ in 0..params.n_stages {
        for i in 0..n {
            let prob = sigmoid(scores[i]);
            grad[i] = y[i] as f64 - prob;
            hess[i] = prob * (1.0 - prob);
        }
        let stage = fit_regression(x, &grad, &hess, (0..n).collect(), &cfg);
        for (score, row) in scores.iter_mut().zip(x) {
            *score += params.learning_rate * stage.predict_row(row);
        }
        for (slot, v) in summed_importances.iter_mut().zip(&stage.raw_importances) {
            *slot += v;
        }
        stages.push(stage);
    }

    BoostingModel {
        init_score,
        learning_rate: params.learning_rate,
        stages,
        n_features: p,
        importances: normalize_importances(&summed_importances),
    }
}

impl BoostingModel {
    /// Class-1 probability: sigmoid of the additive score.
    pub fn predict_row(&self, row: &[f64]) -> f64 {
        sigmoid(self.decision(row))
    }

    /// Raw additive score `init + lr · Σ stage(row)`.
    pub fn decision(&self, row: &[f64]) -> f64 {
        self.init_score
            + self.learning_rate
                * self.stages.iter().map(|s| s.predict_row(row)).sum::<f64>()
    }

    /// Each stage's raw tree output for one row, for additive-identity
    /// verification.
    pub fn stage_outputs(&self, row: &[f64]) -> Vec<f64> {
        self.stages.iter().map(|s| s.predict_row(row)).collect()
    }
}
