//! CART trees: Gini classification and Newton-step regression.
//!
//! One builder serves three consumers. The single decision-tree classifier
//! and the random forest grow Gini trees (leaf = class-1 fraction); gradient
//! boosting grows squared-error trees over gradients whose leaves hold the
//! Newton step `Σ grad / Σ hess`. Splits use midpoint thresholds; rows with
//! `value <= threshold` go left. Ties between equally good splits resolve
//! toward the lower feature index, then the lower threshold, making trees a
//! pure function of (data, config, seed).

use rand::seq::index::sample;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TreeNode {
    Leaf {
        /// Class-1 fraction (classification) or Newton step (regression).
        value: f64,
    },
    Split {
        feature: usize,
        threshold: f64,
        left: Box<TreeNode>,
        right: Box<TreeNode>,
    },
}

/// A fitted tree plus its raw (unnormalized) impurity-decrease importances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeModel {
    pub root: TreeNode,
    pub n_features: usize,
    /// Total weighted impurity decrease credited to each feature. Callers
    /// normalize (or average across trees) as their contract requires.
    pub raw_importances: Vec<f64>,
}

impl TreeModel {
    pub fn predict_row(&self, row: &[f64]) -> f64 {
        let mut node = &self.root;
        loop {
            match node {
                TreeNode::Leaf { value } => return *value,
                TreeNode::Split { feature, threshold, left, right } => {
                    node = if row[*feature] <= *threshold { left } else { right };
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        fn walk(node: &TreeNode) -> usize {
            match node {
                TreeNode::Leaf { .. } => 0,
                TreeNode::Split { left, right, .. } => 1 + walk(left).max(walk(right)),
            }
        }
        walk(&self.root)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct TreeConfig {
    pub max_depth: Option<usize>,
    pub min_leaf: usize,
    /// Features considered per split; `None` means all, in index order.
    pub max_features: Option<usize>,
}

/// What the tree predicts and how node quality is scored.
enum Target<'a> {
    /// Gini impurity over binary labels.
    Classes(&'a [u8]),
    /// Squared-error over gradients; leaves emit `Σ grad / Σ hess`.
    Newton { grad: &'a [f64], hess: &'a [f64] },
}

pub(crate) struct TreeBuilder<'a> {
    x: &'a [Vec<f64>],
    target: Target<'a>,
    cfg: &'a TreeConfig,
    rng: Option<ChaCha8Rng>,
    importances: Vec<f64>,
}

/// Fits a Gini classification tree on the rows named by `rows` (repeats
/// allowed, enabling bootstrap samples). `rng` drives per-split feature
/// subsampling and must be present when `cfg.max_features` is set.
pub(crate) fn fit_classification(
    x: &[Vec<f64>],
    y: &[u8],
    rows: Vec<usize>,
    cfg: &TreeConfig,
    rng: Option<ChaCha8Rng>,
) -> TreeModel {
    TreeBuilder { x, target: Target::Classes(y), cfg, rng, importances: vec![0.0; width(x)] }
        .fit(rows)
}

/// Fits a squared-error tree over `grad` with Newton-step leaves.
pub(crate) fn fit_regression(
    x: &[Vec<f64>],
    grad: &[f64],
    hess: &[f64],
    rows: Vec<usize>,
    cfg: &TreeConfig,
) -> TreeModel {
    TreeBuilder {
        x,
        target: Target::Newton { grad, hess },
        cfg,
        rng: None,
        importances: vec![0.0; width(x)],
    }
    .fit(rows)
}

fn width(x: &[Vec<f64>]) -> usize {
    x.first().map_or(0, Vec::len)
}

/// Node statistics sufficient for impurity and leaf values of either target.
#[derive(Clone, Copy, Default)]
struct NodeStats {
    n: f64,
    /// Class-1 count, or Σ grad.
    sum: f64,
    /// Unused for classes; Σ grad² for Newton.
    sum_sq: f64,
    /// Unused for classes; Σ hess for Newton.
    hess: f64,
}

impl NodeStats {
    fn add(&mut self, sum: f64, sum_sq: f64, hess: f64) {
        self.n += 1.0;
        self.sum += sum;
        self.sum_sq += sum_sq;
        self.hess += hess;
    }
}

impl<'a> TreeBuilder<'a> {
    fn fit(mut self, rows: Vec<usize>) -> TreeModel {
        let root = self.build(rows, 0);
        TreeModel { root, n_features: width(self.x), raw_importances: self.importances }
    }

    fn row_stats(&self, row: usize) -> (f64, f64, f64) {
        match &self.target {
            Target::Classes(y) => (y[row] as f64, 0.0, 0.0),
            Target::Newton { grad, hess } => {
                (grad[row], grad[row] * grad[row], hess[row])
            }
        }
    }

    /// Weighted impurity: `n · gini` for classes, SSE about the mean for
    /// gradients. Comparable across children of one node.
    fn impurity(&self, s: &NodeStats) -> f64 {
        if s.n == 0.0 {
            return 0.0;
        }
        match &self.target {
            Target::Classes(_) => {
                let p = s.sum / s.n;
                s.n * (1.0 - p * p - (1.0 - p) * (1.0 - p))
            }
            Target::Newton { .. } => s.sum_sq - s.sum * s.sum / s.n,
        }
    }

    fn leaf(&self, s: &NodeStats) -> TreeNode {
        let value = match &self.target {
            Target::Classes(_) => s.sum / s.n,
            Target::Newton { .. } => {
                if s.hess > 0.0 {
                    s.sum / s.hess
                } else {
                    0.0
                }
            }
        };
        TreeNode::Leaf { value }
    }

    fn build(&mut self, rows: Vec<usize>, depth: usize) -> TreeNode {
        let mut stats = NodeStats::default();
        for &r in &rows {
            let (s, ss, h) = self.row_stats(r);
            stats.add(s, ss, h);
        }

        let node_impurity = self.impurity(&stats);
        let depth_reached = self.cfg.max_depth.is_some_and(|d| depth >= d);
        if depth_reached || rows.len() < 2 * self.cfg.min_leaf || node_impurity <= 0.0 {
            return self.leaf(&stats);
        }

        let Some(split) = self.best_split(&rows, &stats, node_impurity) else {
            return self.leaf(&stats);
        };

        // A zero-gain split of an impure node is still taken: partitioning
        // strictly shrinks both sides, and a deeper level may separate what
        // this one cannot (the canonical case being XOR-shaped data).
        self.importances[split.feature] += split.decrease.max(0.0);

        let (mut left, mut right) = (Vec::new(), Vec::new());
        for r in rows {
            if self.x[r][split.feature] <= split.threshold {
                left.push(r);
            } else {
                right.push(r);
            }
        }
        TreeNode::Split {
            feature: split.feature,
            threshold: split.threshold,
            left: Box::new(self.build(left, depth + 1)),
            right: Box::new(self.build(right, depth + 1)),
        }
    }

    fn candidate_features(&mut self) -> Vec<usize> {
        let p = width(self.x);
        match (self.cfg.max_features, self.rng.as_mut()) {
            (Some(m), Some(rng)) if m < p => {
                let mut chosen = sample(rng, p, m).into_vec();
                chosen.sort_unstable();
                chosen
            }
            _ => (0..p).collect(),
        }
    }

    fn best_split(
        &mut self,
        rows: &[usize],
        stats: &NodeStats,
        node_impurity: f64,
    ) -> Option<SplitChoice> {
        let features = self.candidate_features();
        let mut best: Option<SplitChoice> = None;
        let mut column: Vec<(f64, usize)> = Vec::with_capacity(rows.len());
        for feature in features {
            column.clear();
            column.extend(rows.iter().map(|&r| (self.x[r][feature], r)));
            column.sort_by(|a, b| a.0.total_cmp(&b.0));

            let mut left = NodeStats::default();
            for i in 0..column.len() - 1 {
                let (value, row) = column[i];
                let (s, ss, h) = self.row_stats(row);
                left.add(s, ss, h);
                let next_value = column[i + 1].0;
                if value == next_value {
                    continue;
                }
                let left_n = i + 1;
                let right_n = column.len() - left_n;
                if left_n < self.cfg.min_leaf || right_n < self.cfg.min_leaf {
                    continue;
                }
                let right = NodeStats {
                    n: stats.n - left.n,
                    sum: stats.sum - left.sum,
                    sum_sq: stats.sum_sq - left.sum_sq,
                    hess: stats.hess - left.hess,
                };
                let decrease = node_impurity - self.impurity(&left) - self.impurity(&right);
                // Strict improvement keeps the first (lowest feature index,
                // lowest threshold) of any tied candidates.
                if best.as_ref().is_none_or(|b| decrease > b.decrease) {
                    best = Some(SplitChoice {
                        feature,
                        threshold: value + (next_value - value) / 2.0,
                        decrease,
                    });
                }
            }
        }
        best
    }
}

struct SplitChoice {
    feature: usize,
    threshold: f64,
    decrease: f64,
}

/// Normalizes raw importances to sum to 1; all-zero stays all-zero.
pub(crate) fn normalize_importances(raw: &[f64]) -> Vec<f64> {
    let total: f64 = raw.iter().sum();
    if total > 0.0 {
        raw.iter().map(|v| v / total).collect()
    } else {
        vec![0.0; raw.len()]
    }
}
