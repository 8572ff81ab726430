//! Linear support vector machine: hinge loss with L2 penalty, trained by
//! deterministic full-batch subgradient descent.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmModel {
    pub weights: Vec<f64>,
    pub bias: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SvmParams {
    /// L2 penalty on the weights (the bias is unpenalized).
    pub l2: f64,
    pub max_epochs: usize,
}

impl Default for SvmParams {
    fn default() -> Self {
        Self { l2: 1e-3, max_epochs: 200 }
    }
}

/// Primal objective `λ/2 ||w||² + mean hinge` with labels in {-1, +1}.
fn objective(x: &[Vec<f64>], y: &[f64], weights: &[f64], bias: f64, l2: f64) -> f64 {
    let hinge: f64 = x
        .iter()
        .zip(y)
        .map(|(row, &label)| {
            let z = bias + dot(row, weights);
            (1.0 - label * z).max(0.0)
        })
        .sum();
    0.5 * l2 * weights.iter().map(|w| w * w).sum::<f64>() + hinge / x.len() as f64
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Subgradient descent with a backtracking step: each epoch computes the
/// full-batch subgradient and shrinks the step until the objective does not
/// increase, so the objective trace is monotone non-increasing. Stops early
/// once no step of any size helps.
pub(crate) fn fit(x: &[Vec<f64>], y: &[u8], params: &SvmParams) -> SvmModel {
    let n = x.len() as f64;
    let p = x[0].len();
    let signed: Vec<f64> = y.iter().map(|&v| if v == 1 { 1.0 } else { -1.0 }).collect();

    let mut weights = vec![0.0; p];
    let mut bias = 0.0;
    let mut current = objective(x, &signed, &weights, bias, params.l2);
    let mut step = 1.0;

    for _ in 0..params.max_epochs {
        let mut grad_w: Vec<f64> = weights.iter().map(|w| params.l2 * w).collect();
        let mut grad_b = 0.0;
        for (row, &label) in x.iter().zip(&signed) {
            let z = bias + dot(row, &weights);
            if label * z < 1.0 {
                for (g, v) in grad_w.iter_mut().zip(row) {
                    *g -= label * v / n;
                }
                grad_b -= label / n;
            }
        }

        let mut moved = false;
        while step > 1e-14 {
            let trial_w: Vec<f64> =
                weights.iter().zip(&grad_w).map(|(w, g)| w - step * g).collect();
            let trial_b = bias - step * grad_b;
            let trial = objective(x, &signed, &trial_w, trial_b, params.l2);
            if trial <= current {
                moved = trial < current;
                weights = trial_w;
                bias = trial_b;
                current = trial;
                step = (step * 2.0).min(1e3);
                break;
            }
            step *= 0.5;
        }
        if !moved {
            break;
        }
    }
    SvmModel { weights, bias }
}

impl SvmModel {
    /// Signed margin; positive means class 1.
    pub fn predict_row(&self, row: &[f64]) -> f64 {
        self.bias + dot(row, &self.weights)
    }
}
