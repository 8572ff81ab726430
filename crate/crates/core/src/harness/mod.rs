//! Experiment orchestration: configuration, the repeated evaluation
//! protocol, and aggregation into a report.
//!
//! One experiment fixes a kinematic setting and extracts features exactly
//! once; every repetition then redraws a participant-disjoint split,
//! restandardizes, reselects features, rebalances, and retrains every model
//! in the roster from its own seed. All randomness derives from
//! `base_seed + repetition_index`, so any repetition can be reproduced in
//! isolation.

pub mod report;
pub mod synth;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::corpus::{label_segments, Corpus, CorpusError, Outcome, N_CHANNELS};
use crate::features::{extract_matrix, FeatureError, FeatureMatrix};
use crate::kinematics::{build_stack, window_stack, KinematicsError, Order};
use crate::models::{
    self, compute_metrics, Metrics, ModelError, ModelKind, ModelSpec,
};
use crate::prep::{
    rfe_select, smote, split_participants, FeatureMask, PrepError, SplitPlan, Standardizer,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
    #[error(transparent)]
    Feature(#[from] FeatureError),
    #[error(transparent)]
    Prep(#[from] PrepError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Which kinematic orders feed the feature set: each setting adds the next
/// derivative on top of the previous one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Setting {
    S1,
    S2,
    S3,
    S4,
}

impl Setting {
    pub const ALL: [Setting; 4] = [Setting::S1, Setting::S2, Setting::S3, Setting::S4];

    /// The cumulative order prefix this setting extracts features from.
    pub fn orders(self) -> &'static [Order] {
        let n = match self {
            Setting::S1 => 1,
            Setting::S2 => 2,
            Setting::S3 => 3,
            Setting::S4 => 4,
        };
        &Order::ALL[..n]
    }

    pub fn name(self) -> &'static str {
        match self {
            Setting::S1 => "S1",
            Setting::S2 => "S2",
            Setting::S3 => "S3",
            Setting::S4 => "S4",
        }
    }

    /// Human-readable list of the included orders.
    pub fn describe(self) -> String {
        self.orders().iter().map(|o| o.name()).collect::<Vec<_>>().join("+")
    }

    pub fn parse(text: &str) -> Option<Setting> {
        Self::ALL.into_iter().find(|s| s.name().eq_ignore_ascii_case(text.trim()))
    }
}

/// Everything that defines an experiment besides the corpus itself.
///
/// The configuration is hashable ([`ExperimentConfig::hash`]) so a report
/// can state exactly which protocol produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    pub setting: Setting,
    pub window_len_s: f64,
    pub stride_s: f64,
    pub segment_len_s: f64,
    /// Features kept by recursive elimination each repetition.
    pub k_features: usize,
    /// Neighbour pool size for minority oversampling.
    pub smote_neighbors: usize,
    /// Number of independent split/train/evaluate repetitions.
    pub repetitions: usize,
    pub test_fraction: f64,
    pub base_seed: u64,
    /// Models evaluated every repetition, in reporting order.
    pub roster: Vec<ModelKind>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            setting: Setting::S4,
            window_len_s: 1.0,
            stride_s: 1.0,
            segment_len_s: 10.0,
            k_features: 50,
            smote_neighbors: 5,
            repetitions: 50,
            test_fraction: 0.2,
            base_seed: 42,
            roster: ModelKind::ALL.to_vec(),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |msg: String| Err(HarnessError::InvalidConfig(msg));
        if !(self.window_len_s > 0.0 && self.stride_s > 0.0 && self.segment_len_s > 0.0) {
            return bad("window, stride, and segment lengths must be positive".into());
        }
        if self.window_len_s > self.segment_len_s {
            return bad(format!(
                "window ({} s) cannot exceed segment ({} s)",
                self.window_len_s, self.segment_len_s
            ));
        }
        if self.k_features == 0 || self.smote_neighbors == 0 || self.repetitions == 0 {
            return bad("k_features, smote_neighbors, and repetitions must be >= 1".into());
        }
        if !(self.test_fraction > 0.0 && self.test_fraction < 1.0) {
            return bad(format!("test_fraction {} is outside (0, 1)", self.test_fraction));
        }
        if self.roster.is_empty() {
            return bad("roster is empty".into());
        }
        for (i, kind) in self.roster.iter().enumerate() {
            if self.roster[..i].contains(kind) {
                return bad(format!("roster lists {} twice", kind.display_name()));
            }
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON encoding, identifying the protocol.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(canonical.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Cuts every recording into labeled segments, differentiates each segment,
/// windows it, and extracts the feature matrix for the setting's orders.
///
/// This runs once per experiment; repetitions only re-split its rows.
pub fn extract_corpus_features(
    corpus: &Corpus,
    config: &ExperimentConfig,
) -> Result<FeatureMatrix, HarnessError> {
    let mut windows = Vec::new();
    for rec in &corpus.recordings {
        for seg in label_segments(rec, config.segment_len_s)? {
            let channels: [Vec<f64>; N_CHANNELS] =
                std::array::from_fn(|c| rec.channels[c][seg.start..seg.end].to_vec());
            let stack = build_stack(&channels, rec.sample_rate_hz)?;
            windows.extend(window_stack(
                &stack,
                &seg.participant_id,
                seg.label,
                config.window_len_s,
                config.stride_s,
            )?);
        }
    }
    Ok(extract_matrix(&windows, config.setting.orders())?)
}

/// One repetition's artifacts: the split it drew, the features it kept, and
/// per-model test metrics (in roster order) with importances where the
/// model provides them (aligned with `mask.names`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepetitionResult {
    pub rep_index: usize,
    pub seed: u64,
    pub plan: SplitPlan,
    pub mask: FeatureMask,
    pub metrics: Vec<Metrics>,
    pub importances: Vec<Option<Vec<f64>>>,
}

/// Runs one repetition of the protocol on a pre-extracted feature matrix.
///
/// Sub-seeds are drawn from `base_seed + rep_index` in a fixed order —
/// split, feature selection, oversampling, then one per roster model — so
/// adding a model to the roster does not disturb the earlier draws.
pub fn run_repetition(
    matrix: &FeatureMatrix,
    outcomes: &[(String, Outcome)],
    config: &ExperimentConfig,
    rep_index: usize,
) -> Result<RepetitionResult, HarnessError> {
    let seed = config.base_seed.wrapping_add(rep_index as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let split_seed: u64 = rng.gen();
    let rfe_seed: u64 = rng.gen();
    let smote_seed: u64 = rng.gen();
    let model_seeds: Vec<u64> = config.roster.iter().map(|_| rng.gen()).collect();

    let plan = split_participants(outcomes, config.test_fraction, split_seed)?;
    // The invariant every later stage depends on: no participant feeds both
    // sides of the split.
    assert!(
        plan.train_participants.iter().all(|p| !plan.test_participants.contains(p)),
        "participant appears on both sides of the split"
    );
    let (train_rows, test_rows) = plan.row_indices(matrix)?;

    let mut scaled: Vec<Vec<f64>> = matrix.rows.iter().map(|r| r.values.clone()).collect();
    let scaler = Standardizer::fit(&scaled, &train_rows)?;
    scaler.apply(&mut scaled)?;

    let train_x: Vec<Vec<f64>> = train_rows.iter().map(|&i| scaled[i].clone()).collect();
    let train_y: Vec<u8> = train_rows.iter().map(|&i| matrix.rows[i].label.as_u8()).collect();
    let test_x: Vec<Vec<f64>> = test_rows.iter().map(|&i| scaled[i].clone()).collect();
    let test_y: Vec<u8> = test_rows.iter().map(|&i| matrix.rows[i].label.as_u8()).collect();

    let mask = rfe_select(&train_x, &train_y, &matrix.names, config.k_features, rfe_seed)?;
    let train_sel = mask.apply(&train_x)?;
    let test_sel = mask.apply(&test_x)?;
    let (train_bal, train_bal_y) =
        smote(&train_sel, &train_y, config.smote_neighbors, smote_seed)?;

    let mut metrics = Vec::with_capacity(config.roster.len());
    let mut importances = Vec::with_capacity(config.roster.len());
    for (&kind, &model_seed) in config.roster.iter().zip(&model_seeds) {
        let spec = ModelSpec::with_defaults(kind, model_seed);
        let model = models::train(&spec, &train_bal, &train_bal_y)?;
        let predictions = model.predict(&test_sel)?;
        metrics.push(compute_metrics(&test_y, &predictions)?);
        importances.push(model.importances());
    }

    Ok(RepetitionResult { rep_index, seed, plan, mask, metrics, importances })
}

/// Mean and population standard deviation of each metric across
/// repetitions, for one model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSummary {
    pub kind: ModelKind,
    pub accuracy_mean: f64,
    pub accuracy_sd: f64,
    pub precision_mean: f64,
    pub precision_sd: f64,
    pub recall_mean: f64,
    pub recall_sd: f64,
    pub f1_mean: f64,
    pub f1_sd: f64,
    /// The underlying per-repetition metrics, in repetition order.
    pub per_rep: Vec<Metrics>,
}

/// A feature name with its importance averaged across repetitions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureImportance {
    pub name: String,
    pub importance: f64,
}

/// The aggregated outcome of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub config: ExperimentConfig,
    pub config_hash: String,
    pub n_participants: usize,
    pub n_windows: usize,
    pub n_features_total: usize,
    pub n_features_selected: usize,
    /// Per-model summaries in roster order.
    pub models: Vec<ModelSummary>,
    /// Highest mean accuracy; roster order breaks ties.
    pub best_model: ModelKind,
    /// The model whose importances produced `top_features`: the
    /// importance-reporting model with the highest mean accuracy.
    pub importance_model: Option<ModelKind>,
    /// Selected-feature importances averaged over all repetitions
    /// (a feature absent from a repetition's selection contributes zero),
    /// sorted by descending averaged importance.
    pub top_features: Vec<FeatureImportance>,
}

/// A full experiment: the aggregate report plus every repetition's
/// artifacts for callers that want to persist or audit them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRun {
    pub report: EvaluationReport,
    pub repetitions: Vec<RepetitionResult>,
}

fn mean_sd(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    let var = values.map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

fn summarize(kind: ModelKind, position: usize, reps: &[RepetitionResult]) -> ModelSummary {
    let per_rep: Vec<Metrics> = reps.iter().map(|r| r.metrics[position]).collect();
    let stat = |f: fn(&Metrics) -> f64| mean_sd(per_rep.iter().map(f));
    let (accuracy_mean, accuracy_sd) = stat(|m| m.accuracy);
    let (precision_mean, precision_sd) = stat(|m| m.precision);
    let (recall_mean, recall_sd) = stat(|m| m.recall);
    let (f1_mean, f1_sd) = stat(|m| m.f1);
    ModelSummary {
        kind,
        accuracy_mean,
        accuracy_sd,
        precision_mean,
        precision_sd,
        recall_mean,
        recall_sd,
        f1_mean,
        f1_sd,
        per_rep,
    }
}

/// Averages one roster position's importances across repetitions by feature
/// name; repetitions that did not select a feature contribute zero to it.
fn average_importances(position: usize, reps: &[RepetitionResult]) -> Vec<FeatureImportance> {
    let mut totals: std::collections::BTreeMap<&str, f64> = Default::default();
    for rep in reps {
        if let Some(values) = &rep.importances[position] {
            for (name, value) in rep.mask.names.iter().zip(values) {
                *totals.entry(name).or_insert(0.0) += value;
            }
        }
    }
    let n = reps.len() as f64;
    let mut averaged: Vec<FeatureImportance> = totals
        .into_iter()
        .map(|(name, total)| FeatureImportance { name: name.to_string(), importance: total / n })
        .collect();
    averaged.sort_by(|a, b| {
        b.importance.total_cmp(&a.importance).then_with(|| a.name.cmp(&b.name))
    });
    averaged
}

/// Runs the whole experiment: one feature extraction, `repetitions`
/// independent protocol repetitions (in parallel — each is seeded by its
/// index, so scheduling cannot change results), and aggregation.
pub fn run_experiment(
    corpus: &Corpus,
    config: &ExperimentConfig,
) -> Result<ExperimentRun, HarnessError> {
    config.validate()?;
    let matrix = extract_corpus_features(corpus, config)?;
    let outcomes: Vec<(String, Outcome)> = corpus.outcomes().into_iter().collect();

    let repetitions: Vec<RepetitionResult> = (0..config.repetitions)
        .into_par_iter()
        .map(|rep| run_repetition(&matrix, &outcomes, config, rep))
        .collect::<Result<_, _>>()?;

    let models: Vec<ModelSummary> = config
        .roster
        .iter()
        .enumerate()
        .map(|(position, &kind)| summarize(kind, position, &repetitions))
        .collect();

    // `max_by` keeps the later of two equal elements, so compare positions in
    // reverse as a tiebreak to let the earlier roster entry win instead.
    let best_model = models
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| {
            a.accuracy_mean.total_cmp(&b.accuracy_mean).then(ib.cmp(ia))
        })
        .map(|(_, m)| m.kind)
        .expect("roster is non-empty");

    // Importances come from the best model that actually reports them.
    let importance_position = models
        .iter()
        .enumerate()
        .filter(|(position, _)| {
            repetitions.iter().any(|r| r.importances[*position].is_some())
        })
        .max_by(|(ia, a), (ib, b)| {
            a.accuracy_mean.total_cmp(&b.accuracy_mean).then(ib.cmp(ia))
        })
        .map(|(position, _)| position);
    let importance_model = importance_position.map(|p| models[p].kind);
    let top_features = importance_position
        .map(|p| average_importances(p, &repetitions))
        .unwrap_or_default();

    let report = EvaluationReport {
        config: config.clone(),
        config_hash: config.hash(),
        n_participants: corpus.recordings.len(),
        n_windows: matrix.n_rows(),
        n_features_total: matrix.n_features(),
        n_features_selected: config.k_features,
        models,
        best_model,
        importance_model,
        top_features,
    };
    Ok(ExperimentRun { report, repetitions })
}
