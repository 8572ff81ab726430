//! The six from-scratch classifiers and binary-classification metrics.
//!
//! All models share one training entry point ([`train`]) and one immutable
//! [`TrainedModel`] result that predicts, scores, optionally reports feature
//! importances, and serializes to versioned JSON. Scores are probabilities
//! for logistic regression, trees, forests, boosting, and kNN, and signed
//! margins for the SVM; [`TrainedModel::predict`] applies each model's
//! thresholding convention.

mod boosting;
mod forest;
mod knn;
mod logistic;
mod svm;
mod tree;

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use boosting::{BoostingModel, BoostingParams};
pub use forest::{ForestModel, ForestParams};
pub use knn::{KnnModel, KnnParams};
pub use logistic::{LogisticModel, LogisticParams};
pub use svm::{SvmModel, SvmParams};
pub use tree::{TreeModel, TreeNode};

use tree::TreeConfig;

/// Version tag written into every serialized model.
pub const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("training data contains a single class")]
    SingleClassTraining,
    #[error("training data contains a non-finite value")]
    NonFiniteInput,
    #[error("label {0} is not 0 or 1")]
    InvalidLabel(u8),
    #[error("row has {actual} features, model expects {expected}")]
    SchemaMismatch { expected: usize, actual: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("ragged matrix: row {row} has {actual} features, expected {expected}")]
    RaggedMatrix { row: usize, expected: usize, actual: usize },
    #[error("empty training set")]
    EmptyTrainingSet,
    #[error("invalid hyperparameter: {0}")]
    InvalidHyperparameter(String),
    #[error("unsupported model format version {0}")]
    UnsupportedFormatVersion(u32),
    #[error(transparent)]
    Serde(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// The model roster.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    LogisticRegression,
    DecisionTree,
    RandomForest,
    GradientBoosting,
    KNearestNeighbors,
    SupportVectorMachine,
}

impl ModelKind {
    pub const ALL: [ModelKind; 6] = [
        ModelKind::LogisticRegression,
        ModelKind::DecisionTree,
        ModelKind::RandomForest,
        ModelKind::GradientBoosting,
        ModelKind::KNearestNeighbors,
        ModelKind::SupportVectorMachine,
    ];

    pub fn display_name(self) -> &'static str {
        match self {
            ModelKind::LogisticRegression => "Logistic Regression",
            ModelKind::DecisionTree => "Decision Tree",
            ModelKind::RandomForest => "Random Forest",
            ModelKind::GradientBoosting => "Gradient Boosting",
            ModelKind::KNearestNeighbors => "K-Nearest Neighbors",
            ModelKind::SupportVectorMachine => "Support Vector Machine",
        }
    }

    pub fn abbreviation(self) -> &'static str {
        match self {
            ModelKind::LogisticRegression => "LR",
            ModelKind::DecisionTree => "DT",
            ModelKind::RandomForest => "RF",
            ModelKind::GradientBoosting => "GB",
            ModelKind::KNearestNeighbors => "KNN",
            ModelKind::SupportVectorMachine => "SVM",
        }
    }

    /// Parses an abbreviation or snake_case name, case-insensitively.
    pub fn parse(text: &str) -> Option<ModelKind> {
        let lower = text.trim().to_ascii_lowercase();
        Self::ALL.into_iter().find(|k| {
            lower == k.abbreviation().to_ascii_lowercase()
                || lower == k.display_name().to_ascii_lowercase().replace([' ', '-'], "_")
        })
    }
}

/// Hyperparameters of a single decision tree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TreeParams {
    /// `None` grows until purity or `min_leaf` stops a node.
    pub max_depth: Option<usize>,
    pub min_leaf: usize,
}

impl Default for TreeParams {
    fn default() -> Self {
        Self { max_depth: Some(8), min_leaf: 2 }
    }
}

/// Kind plus that kind's hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ModelParams {
    LogisticRegression(LogisticParams),
    DecisionTree(TreeParams),
    RandomForest(ForestParams),
    GradientBoosting(BoostingParams),
    KNearestNeighbors(KnnParams),
    SupportVectorMachine(SvmParams),
}

/// A trainable model description: what to fit, with which knobs, under
/// which seed. Construction picks the default hyperparameters; validation
/// happens in [`train`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub seed: u64,
    pub params: ModelParams,
}

impl ModelSpec {
    pub fn with_defaults(kind: ModelKind, seed: u64) -> Self {
        let params = match kind {
            ModelKind::LogisticRegression => {
                ModelParams::LogisticRegression(LogisticParams::default())
            }
            ModelKind::DecisionTree => ModelParams::DecisionTree(TreeParams::default()),
            ModelKind::RandomForest => ModelParams::RandomForest(ForestParams::default()),
            ModelKind::GradientBoosting => {
                ModelParams::GradientBoosting(BoostingParams::default())
            }
            ModelKind::KNearestNeighbors => ModelParams::KNearestNeighbors(KnnParams::default()),
            ModelKind::SupportVectorMachine => {
                ModelParams::SupportVectorMachine(SvmParams::default())
            }
        };
        Self { seed, params }
    }

    pub fn kind(&self) -> ModelKind {
        match self.params {
            ModelParams::LogisticRegression(_) => ModelKind::LogisticRegression,
            ModelParams::DecisionTree(_) => ModelKind::DecisionTree,
            ModelParams::RandomForest(_) => ModelKind::RandomForest,
            ModelParams::GradientBoosting(_) => ModelKind::GradientBoosting,
            ModelParams::KNearestNeighbors(_) => ModelKind::KNearestNeighbors,
            ModelParams::SupportVectorMachine(_) => ModelKind::SupportVectorMachine,
        }
    }

    fn validate(&self) -> Result<(), ModelError> {
        let bad = |msg: &str| Err(ModelError::InvalidHyperparameter(msg.to_string()));
        match &self.params {
            ModelParams::LogisticRegression(p) => {
                if p.l2 < 0.0 || !p.l2.is_finite() {
                    return bad("logistic l2 must be finite and non-negative");
                }
                if p.max_epochs == 0 || p.tol <= 0.0 {
                    return bad("logistic needs max_epochs >= 1 and tol > 0");
                }
            }
            ModelParams::DecisionTree(p) => {
                if p.min_leaf == 0 {
                    return bad("tree min_leaf must be >= 1");
                }
            }
            ModelParams::RandomForest(p) => {
                if p.n_trees == 0 || p.min_leaf == 0 {
                    return bad("forest needs n_trees >= 1 and min_leaf >= 1");
                }
            }
            ModelParams::GradientBoosting(p) => {
                if p.n_stages == 0 || p.max_depth == 0 || p.min_leaf == 0 {
                    return bad("boosting needs n_stages, max_depth, min_leaf >= 1");
                }
                if !(p.learning_rate > 0.0 && p.learning_rate <= 1.0) {
                    return bad("boosting learning_rate must be in (0, 1]");
                }
            }
            ModelParams::KNearestNeighbors(p) => {
                if p.k == 0 {
                    return bad("knn k must be >= 1");
                }
            }
            ModelParams::SupportVectorMachine(p) => {
                if p.l2 < 0.0 || !p.l2.is_finite() || p.max_epochs == 0 {
                    return bad("svm needs finite non-negative l2 and max_epochs >= 1");
                }
            }
        }
        Ok(())
    }
}

/// A fitted classifier, immutable and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TrainedModel {
    LogisticRegression(LogisticModel),
    DecisionTree(TreeModel),
    RandomForest(ForestModel),
    GradientBoosting(BoostingModel),
    KNearestNeighbors(KnnModel),
    SupportVectorMachine(SvmModel),
}

impl TrainedModel {
    pub fn kind(&self) -> ModelKind {
        match self {
            TrainedModel::LogisticRegression(_) => ModelKind::LogisticRegression,
            TrainedModel::DecisionTree(_) => ModelKind::DecisionTree,
            TrainedModel::RandomForest(_) => ModelKind::RandomForest,
            TrainedModel::GradientBoosting(_) => ModelKind::GradientBoosting,
            TrainedModel::KNearestNeighbors(_) => ModelKind::KNearestNeighbors,
            TrainedModel::SupportVectorMachine(_) => ModelKind::SupportVectorMachine,
        }
    }

    pub fn n_features(&self) -> usize {
        match self {
            TrainedModel::LogisticRegression(m) => m.weights.len(),
            TrainedModel::DecisionTree(m) => m.n_features,
            TrainedModel::RandomForest(m) => m.n_features,
            TrainedModel::GradientBoosting(m) => m.n_features,
            TrainedModel::KNearestNeighbors(m) => m.train_x.first().map_or(0, Vec::len),
            TrainedModel::SupportVectorMachine(m) => m.weights.len(),
        }
    }

    /// Class-1 confidence: a probability for every model except the SVM,
    /// whose score is a signed margin.
    pub fn predict_score_row(&self, row: &[f64]) -> Result<f64, ModelError> {
        if row.len() != self.n_features() {
            return Err(ModelError::SchemaMismatch {
                expected: self.n_features(),
                actual: row.len(),
            });
        }
        Ok(match self {
            TrainedModel::LogisticRegression(m) => m.predict_row(row),
            TrainedModel::DecisionTree(m) => m.predict_row(row),
            TrainedModel::RandomForest(m) => m.predict_row(row),
            TrainedModel::GradientBoosting(m) => m.predict_row(row),
            TrainedModel::KNearestNeighbors(m) => m.predict_row(row),
            TrainedModel::SupportVectorMachine(m) => m.predict_row(row),
        })
    }

    /// Turns one score into a label under this model's convention:
    /// probability >= 0.5, except kNN (strict majority, ties to class 0)
    /// and the SVM (margin >= 0).
    pub fn score_to_label(&self, score: f64) -> u8 {
        let positive = match self.kind() {
            ModelKind::KNearestNeighbors => score > 0.5,
            ModelKind::SupportVectorMachine => score >= 0.0,
            _ => score >= 0.5,
        };
        u8::from(positive)
    }

    pub fn predict_scores(&self, x: &[Vec<f64>]) -> Result<Vec<f64>, ModelError> {
        x.iter().map(|row| self.predict_score_row(row)).collect()
    }

    pub fn predict(&self, x: &[Vec<f64>]) -> Result<Vec<u8>, ModelError> {
        Ok(self.predict_scores(x)?.iter().map(|&s| self.score_to_label(s)).collect())
    }

    /// Normalized per-feature importances for the tree-based models; `None`
    /// for models that have no importance notion.
    pub fn importances(&self) -> Option<Vec<f64>> {
        match self {
            TrainedModel::DecisionTree(m) => {
                Some(tree::normalize_importances(&m.raw_importances))
            }
            TrainedModel::RandomForest(m) => Some(m.importances.clone()),
            TrainedModel::GradientBoosting(m) => Some(m.importances.clone()),
            _ => None,
        }
    }
}

fn validate_training_data(x: &[Vec<f64>], y: &[u8]) -> Result<(), ModelError> {
    if x.is_empty() {
        return Err(ModelError::EmptyTrainingSet);
    }
    if x.len() != y.len() {
        return Err(ModelError::LengthMismatch { left: x.len(), right: y.len() });
    }
    let p = x[0].len();
    for (i, row) in x.iter().enumerate() {
        if row.len() != p {
            return Err(ModelError::RaggedMatrix { row: i, expected: p, actual: row.len() });
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(ModelError::NonFiniteInput);
        }
    }
    if let Some(&bad) = y.iter().find(|&&v| v > 1) {
        return Err(ModelError::InvalidLabel(bad));
    }
    if y.iter().all(|&v| v == 0) || y.iter().all(|&v| v == 1) {
        return Err(ModelError::SingleClassTraining);
    }
    Ok(())
}

/// Trains a model. Deterministic for a fixed spec (including seed) and data.
pub fn train(spec: &ModelSpec, x: &[Vec<f64>], y: &[u8]) -> Result<TrainedModel, ModelError> {
    spec.validate()?;
    validate_training_data(x, y)?;
    Ok(match &spec.params {
        ModelParams::LogisticRegression(p) => {
            TrainedModel::LogisticRegression(logistic::fit(x, y, p))
        }
        ModelParams::DecisionTree(p) => {
            let cfg =
                TreeConfig { max_depth: p.max_depth, min_leaf: p.min_leaf, max_features: None };
            TrainedModel::DecisionTree(tree::fit_classification(
                x,
                y,
                (0..x.len()).collect(),
                &cfg,
                None,
            ))
        }
        ModelParams::RandomForest(p) => {
            TrainedModel::RandomForest(forest::fit(x, y, p, spec.seed))
        }
        ModelParams::GradientBoosting(p) => TrainedModel::GradientBoosting(boosting::fit(x, y, p)),
        ModelParams::KNearestNeighbors(p) => TrainedModel::KNearestNeighbors(knn::fit(x, y, p)),
        ModelParams::SupportVectorMachine(p) => TrainedModel::SupportVectorMachine(svm::fit(x, y, p)),
    })
}

/// Binary-classification metrics with explicit zero-denominator conventions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
    pub true_negatives: usize,
}

impl Metrics {
    /// Derives the four rates from confusion counts. Precision, recall, and
    /// F1 are 0 by convention when their denominators vanish.
    pub fn from_counts(tp: usize, fp: usize, fn_: usize, tn: usize) -> Metrics {
        let total = (tp + fp + fn_ + tn) as f64;
        let ratio = |num: usize, den: usize| if den == 0 { 0.0 } else { num as f64 / den as f64 };
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_);
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        Metrics {
            accuracy: (tp + tn) as f64 / total,
            precision,
            recall,
            f1,
            true_positives: tp,
            false_positives: fp,
            false_negatives: fn_,
            true_negatives: tn,
        }
    }
}

/// Confusion-matrix metrics of predictions against ground truth.
pub fn compute_metrics(y_true: &[u8], y_pred: &[u8]) -> Result<Metrics, ModelError> {
    if y_true.len() != y_pred.len() || y_true.is_empty() {
        return Err(ModelError::LengthMismatch { left: y_true.len(), right: y_pred.len() });
    }
    if let Some(&bad) = y_true.iter().chain(y_pred).find(|&&v| v > 1) {
        return Err(ModelError::InvalidLabel(bad));
    }
    let (mut tp, mut fp, mut fn_, mut tn) = (0, 0, 0, 0);
    for (&t, &p) in y_true.iter().zip(y_pred) {
        match (t, p) {
            (1, 1) => tp += 1,
            (0, 1) => fp += 1,
            (1, 0) => fn_ += 1,
            _ => tn += 1,
        }
    }
    Ok(Metrics::from_counts(tp, fp, fn_, tn))
}

#[derive(Serialize, Deserialize)]
struct ModelEnvelope {
    format_version: u32,
    model: TrainedModel,
}

/// Serializes a model as versioned JSON. Floats are written with enough
/// digits to reload bit-identically, so predictions round-trip exactly.
pub fn save_model(model: &TrainedModel, out: impl Write) -> Result<(), ModelError> {
    let envelope = ModelEnvelope { format_version: MODEL_FORMAT_VERSION, model: model.clone() };
    serde_json::to_writer(out, &envelope)?;
    Ok(())
}

/// Reloads a model saved by [`save_model`], rejecting unknown versions.
pub fn load_model(source: impl Read) -> Result<TrainedModel, ModelError> {
    let envelope: ModelEnvelope = serde_json::from_reader(source)?;
    if envelope.format_version != MODEL_FORMAT_VERSION {
        return Err(ModelError::UnsupportedFormatVersion(envelope.format_version));
    }
    Ok(envelope.model)
}
