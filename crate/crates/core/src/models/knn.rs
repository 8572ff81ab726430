//! k-nearest-neighbors by Euclidean distance.
//!
//! The "model" is the training data itself. Distance ties resolve toward the
//! lower training-row index; a tied vote goes to class 0, so the class-1
//! decision requires a strict majority.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnnModel {
    pub train_x: Vec<Vec<f64>>,
    pub train_y: Vec<u8>,
    /// Effective neighbor count (requested k capped at the training size).
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KnnParams {
    pub k: usize,
}

impl Default for KnnParams {
    fn default() -> Self {
        Self { k: 5 }
    }
}

pub(crate) fn fit(x: &[Vec<f64>], y: &[u8], params: &KnnParams) -> KnnModel {
    KnnModel {
        train_x: x.to_vec(),
        train_y: y.to_vec(),
        k: params.k.min(x.len()),
    }
}

impl KnnModel {
    /// Class-1 fraction among the k nearest training rows.
    pub fn predict_row(&self, row: &[f64]) -> f64 {
        let mut order: Vec<(f64, usize)> = self
            .train_x
            .iter()
            .enumerate()
            .map(|(i, train_row)| {
                let d2: f64 = train_row
                    .iter()
                    .zip(row)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                (d2, i)
            })
            .collect();
        order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let ones = order[..self.k].iter().filter(|&&(_, i)| self.train_y[i] == 1).count();
        ones as f64 / self.k as f64
    }
}
