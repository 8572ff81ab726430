//! Random forest of bootstrapped Gini trees.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::tree::{fit_classification, normalize_importances, TreeConfig, TreeModel};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestModel {
    pub trees: Vec<TreeModel>,
    pub n_features: usize,
    /// Mean of per-tree normalized importances, renormalized to sum to 1.
    pub importances: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForestParams {
    pub n_trees: usize,
    pub max_depth: Option<usize>,
    pub min_leaf: usize,
}

impl Default for ForestParams {
    fn default() -> Self {
        Self { n_trees: 100, max_depth: Some(8), min_leaf: 2 }
    }
}

/// Fits `n_trees` trees, each on its own bootstrap resample with √p features
/// per split. Per-tree seeds are drawn up front from the master seed, so the
/// result is identical whether trees fit in parallel or serially.
pub(crate) fn fit(x: &[Vec<f64>], y: &[u8], params: &ForestParams, seed: u64) -> ForestModel {
    let n = x.len();
    let p = x[0].len();
    let max_features = ((p as f64).sqrt().floor() as usize).max(1);
    let cfg = TreeConfig {
        max_depth: params.max_depth,
        min_leaf: params.min_leaf,
        max_features: Some(max_features),
    };

    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let tree_seeds: Vec<u64> = (0..params.n_trees).map(|_| master.gen()).collect();

    let trees: Vec<TreeModel> = tree_seeds
        .par_iter()
        .map(|&tree_seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(tree_seed);
            let rows: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
            fit_classification(x, y, rows, &cfg, Some(rng))
        })
        .collect();

    let mut summed = vec![0.0; p];
    for tree in &trees {
        for (slot, v) in summed.iter_mut().zip(normalize_importances(&tree.raw_importances)) {
            *slot += v;
        }
    }
    let importances = normalize_importances(&summed);

    ForestModel { trees, n_features: p, importances }
}

impl ForestModel {
    /// Fraction of trees voting class 1 (a tree votes 1 when its leaf's
    /// class-1 fraction exceeds one half).
    pub fn predict_row(&self, row: &[f64]) -> f64 {
        let votes = self.trees.iter().filter(|t| t.predict_row(row) > 0.5).count();
        votes as f64 / self.trees.len() as f64
    }
}
