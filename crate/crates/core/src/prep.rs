//! Dataset preparation between feature extraction and model training:
//! participant-disjoint splitting, train-fitted standardization, recursive
//! feature elimination, and minority oversampling.
//!
//! Everything here is deterministic under an explicit seed, and every step
//! that learns parameters (scaling moments, selected features, synthetic
//! samples) learns them from the training side only — the split is the
//! first operation and all later stages consume its row assignment.

use std::collections::HashSet;
use std::io::{BufRead, BufReader, Read, Write};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Outcome;
use crate::features::FeatureMatrix;
use crate::models::{self, ForestParams, ModelError, ModelParams, ModelSpec};

/// Fraction of the surviving features dropped per elimination round
/// (rounded up, always at least one, never past the target count).
pub const RFE_STEP_FRACTION: f64 = 0.1;

#[derive(Debug, Error)]
pub enum PrepError {
    #[error("empty input")]
    EmptyInput,
    #[error("ragged matrix: row {row} has {actual} columns, expected {expected}")]
    RaggedRow { row: usize, expected: usize, actual: usize },
    #[error("input contains a non-finite value")]
    NonFiniteValue,
    #[error("labels contain a single class")]
    SingleClass,
    #[error("stratum {outcome} has {count} participants; need at least 2 to split")]
    StratumTooSmall { outcome: String, count: usize },
    #[error("test fraction {0} is outside (0, 1)")]
    InvalidFraction(f64),
    #[error("minority class has {count} samples; oversampling needs at least 2")]
    MinorityTooSmall { count: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("participant {0} is not covered by the split plan")]
    UnknownParticipant(String),
    #[error("unknown feature name {0:?}")]
    UnknownFeature(String),
    #[error("bad role {value:?} on line {line}")]
    BadRole { line: usize, value: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn validate_matrix(x: &[Vec<f64>]) -> Result<usize, PrepError> {
    let first = x.first().ok_or(PrepError::EmptyInput)?;
    let width = first.len();
    for (row, values) in x.iter().enumerate() {
        if values.len() != width {
            return Err(PrepError::RaggedRow { row, expected: width, actual: values.len() });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(PrepError::NonFiniteValue);
        }
    }
    Ok(width)
}

fn validate_labels(y: &[u8]) -> Result<(), PrepError> {
    if y.iter().all(|&v| v == y[0]) {
        return Err(PrepError::SingleClass);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Participant-disjoint stratified split
// ---------------------------------------------------------------------------

/// Which side of the split a participant landed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    Train,
    Test,
}

/// A participant-level train/test assignment. Every window of a participant
/// follows the participant, so the two sides never share a person.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitPlan {
    pub train_participants: Vec<String>,
    pub test_participants: Vec<String>,
    pub test_fraction: f64,
    pub seed: u64,
}

/// Draws a stratified participant split: within each outcome stratum the
/// participant ids are sorted, shuffled under the seed, and the first
/// `round(fraction * stratum_size)` go to the test side — clamped so both
/// sides keep at least one participant per stratum.
pub fn split_participants(
    outcomes: &[(String, Outcome)],
    test_fraction: f64,
    seed: u64,
) -> Result<SplitPlan, PrepError> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(PrepError::InvalidFraction(test_fraction));
    }
    if outcomes.is_empty() {
        return Err(PrepError::EmptyInput);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train = Vec::new();
    let mut test = Vec::new();
    // Fixed stratum order keeps the RNG stream independent of input order.
    for outcome in [Outcome::Well, Outcome::Sick] {
        let mut ids: Vec<&str> = outcomes
            .iter()
            .filter(|(_, o)| *o == outcome)
            .map(|(id, _)| id.as_str())
            .collect();
        ids.sort_unstable();
        if ids.len() < 2 {
            return Err(PrepError::StratumTooSmall {
                outcome: format!("{outcome:?}"),
                count: ids.len(),
            });
        }
        ids.shuffle(&mut rng);
        let n_test =
            ((test_fraction * ids.len() as f64).round() as usize).clamp(1, ids.len() - 1);
        for (i, id) in ids.into_iter().enumerate() {
            if i < n_test {
                test.push(id.to_string());
            } else {
                train.push(id.to_string());
            }
        }
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok(SplitPlan { train_participants: train, test_participants: test, test_fraction, seed })
}

impl SplitPlan {
    pub fn role_of(&self, participant_id: &str) -> Option<Role> {
        if self.train_participants.iter().any(|p| p == participant_id) {
            Some(Role::Train)
        } else if self.test_participants.iter().any(|p| p == participant_id) {
            Some(Role::Test)
        } else {
            None
        }
    }

    /// Splits matrix rows by participant. Errors on rows from participants
    /// the plan does not cover, so stale plans cannot silently drop data.
    pub fn row_indices(&self, matrix: &FeatureMatrix) -> Result<(Vec<usize>, Vec<usize>), PrepError> {
        let mut train = Vec::new();
        let mut test = Vec::new();
        for (i, row) in matrix.rows.iter().enumerate() {
            match self.role_of(&row.participant_id) {
                Some(Role::Train) => train.push(i),
                Some(Role::Test) => test.push(i),
                None => return Err(PrepError::UnknownParticipant(row.participant_id.clone())),
            }
        }
        Ok((train, test))
    }

    /// Writes the assignment as `participant_id,role` rows sorted by id.
    pub fn write_csv(&self, mut out: impl Write) -> Result<(), PrepError> {
        let mut rows: Vec<(&str, &str)> = self
            .train_participants
            .iter()
            .map(|p| (p.as_str(), "train"))
            .chain(self.test_participants.iter().map(|p| (p.as_str(), "test")))
            .collect();
        rows.sort_unstable();
        writeln!(out, "participant_id,role")?;
        for (id, role) in rows {
            writeln!(out, "{id},{role}")?;
        }
        Ok(())
    }
}

/// Reads back the membership written by [`SplitPlan::write_csv`] as
/// `(train, test)` id lists. The fraction and seed are not part of the
/// artifact, so this returns the raw membership rather than a plan.
pub fn read_split_csv(source: impl Read) -> Result<(Vec<String>, Vec<String>), PrepError> {
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (i, line) in BufReader::new(source).lines().enumerate() {
        let line = line?;
        if i == 0 {
            continue; // header
        }
        let (id, role) = line
            .split_once(',')
            .ok_or_else(|| PrepError::BadRole { line: i + 1, value: line.clone() })?;
        match role {
            "train" => train.push(id.to_string()),
            "test" => test.push(id.to_string()),
            other => {
                return Err(PrepError::BadRole { line: i + 1, value: other.to_string() })
            }
        }
    }
    Ok((train, test))
}

// ---------------------------------------------------------------------------
// Standardization
// ---------------------------------------------------------------------------

/// Per-column centering and scaling parameters, fitted on training rows and
/// then applied unchanged to any other rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
}

impl Standardizer {
    /// Fits column means and population standard deviations over the listed
    /// rows of `x` (typically the training rows).
    pub fn fit(x: &[Vec<f64>], rows: &[usize]) -> Result<Standardizer, PrepError> {
        let width = validate_matrix(x)?;
        if rows.is_empty() {
            return Err(PrepError::EmptyInput);
        }
        let n = rows.len() as f64;
        let mut means = vec![0.0; width];
        for &r in rows {
            for (m, v) in means.iter_mut().zip(&x[r]) {
                *m += v;
            }
        }
        for m in &mut means {
            *m /= n;
        }
        let mut stds = vec![0.0; width];
        for &r in rows {
            for ((s, v), m) in stds.iter_mut().zip(&x[r]).zip(&means) {
                *s += (v - m) * (v - m);
            }
        }
        for s in &mut stds {
            *s = (*s / n).sqrt();
        }
        Ok(Standardizer { means, stds })
    }

    /// Maps every value to `(v - mean) / std`; columns that were constant on
    /// the fitted rows map to exactly zero.
    pub fn apply(&self, x: &mut [Vec<f64>]) -> Result<(), PrepError> {
        for (row, values) in x.iter_mut().enumerate() {
            if values.len() != self.means.len() {
                return Err(PrepError::RaggedRow {
                    row,
                    expected: self.means.len(),
                    actual: values.len(),
                });
            }
            for ((v, m), s) in values.iter_mut().zip(&self.means).zip(&self.stds) {
                *v = if *s == 0.0 { 0.0 } else { (*v - *m) / *s };
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Recursive feature elimination
// ---------------------------------------------------------------------------

/// The surviving columns of a feature-selection pass, in original column
/// order: parallel lists of column indices and their names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMask {
    pub indices: Vec<usize>,
    pub names: Vec<String>,
}

impl FeatureMask {
    /// Projects rows onto the selected columns.
    pub fn apply(&self, x: &[Vec<f64>]) -> Result<Vec<Vec<f64>>, PrepError> {
        x.iter()
            .enumerate()
            .map(|(row, values)| {
                self.indices
                    .iter()
                    .map(|&j| {
                        values.get(j).copied().ok_or(PrepError::RaggedRow {
                            row,
                            expected: j + 1,
                            actual: values.len(),
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// Writes one selected feature name per line.
    pub fn write_text(&self, mut out: impl Write) -> Result<(), PrepError> {
        for name in &self.names {
            writeln!(out, "{name}")?;
        }
        Ok(())
    }

    /// Rebuilds a mask from a name-per-line file against the full column
    /// name list the matrix was extracted with.
    pub fn read_text(source: impl Read, all_names: &[String]) -> Result<FeatureMask, PrepError> {
        let mut pairs = Vec::new();
        for line in BufReader::new(source).lines() {
            let name = line?;
            if name.is_empty() {
                continue;
            }
            let index = all_names
                .iter()
                .position(|n| *n == name)
                .ok_or_else(|| PrepError::UnknownFeature(name.clone()))?;
            pairs.push((index, name));
        }
        pairs.sort_unstable();
        Ok(FeatureMask {
            indices: pairs.iter().map(|(i, _)| *i).collect(),
            names: pairs.into_iter().map(|(_, n)| n).collect(),
        })
    }
}

/// Recursive feature elimination driven by random-forest importances.
///
/// Each round fits a forest on the surviving columns and drops the
/// `ceil(RFE_STEP_FRACTION * remaining)` least important of them (at least
/// one, never overshooting `k`); importance ties drop the higher original
/// column index. Round seeds are drawn from a generator seeded with `seed`,
/// so the whole elimination path is reproducible. A `k` at or above the
/// column count leaves nothing to eliminate and returns every feature in
/// original order.
pub fn rfe_select(
    x: &[Vec<f64>],
    y: &[u8],
    names: &[String],
    k: usize,
    seed: u64,
) -> Result<FeatureMask, PrepError> {
    let width = validate_matrix(x)?;
    if x.len() != y.len() {
        return Err(PrepError::InvalidParameter(format!(
            "{} rows but {} labels",
            x.len(),
            y.len()
        )));
    }
    validate_labels(y)?;
    if names.len() != width {
        return Err(PrepError::InvalidParameter(format!(
            "{} names for {width} columns",
            names.len()
        )));
    }
    if k == 0 {
        return Err(PrepError::InvalidParameter("cannot select 0 features".into()));
    }
    if k >= width {
        return Ok(FeatureMask { names: names.to_vec(), indices: (0..width).collect() });
    }

    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut remaining: Vec<usize> = (0..width).collect();
    while remaining.len() > k {
        let round_seed: u64 = master.gen();
        let sub: Vec<Vec<f64>> = x
            .iter()
            .map(|row| remaining.iter().map(|&j| row[j]).collect())
            .collect();
        let spec = ModelSpec {
            seed: round_seed,
            params: ModelParams::RandomForest(ForestParams::default()),
        };
        let model = models::train(&spec, &sub, y)?;
        let importances = model.importances().expect("forests report importances");

        let n_drop = ((RFE_STEP_FRACTION * remaining.len() as f64).ceil() as usize)
            .max(1)
            .min(remaining.len() - k);
        let mut order: Vec<usize> = (0..remaining.len()).collect();
        order.sort_by(|&a, &b| {
            importances[a]
                .total_cmp(&importances[b])
                .then_with(|| remaining[b].cmp(&remaining[a]))
        });
        let dropped: HashSet<usize> =
            order[..n_drop].iter().map(|&pos| remaining[pos]).collect();
        remaining.retain(|j| !dropped.contains(j));
    }

    Ok(FeatureMask {
        names: remaining.iter().map(|&j| names[j].clone()).collect(),
        indices: remaining,
    })
}

// ---------------------------------------------------------------------------
// Minority oversampling
// ---------------------------------------------------------------------------

/// Balances classes by synthesizing minority samples along segments between
/// a minority sample and one of its `k` nearest minority neighbours:
/// `x_new = x_i + u * (x_nn - x_i)` with `u` uniform in `[0, 1)`.
///
/// Originals are returned verbatim (in their input order) with synthetics
/// appended; already-balanced input is returned unchanged. `k` is capped at
/// `minority_count - 1`.
pub fn smote(
    x: &[Vec<f64>],
    y: &[u8],
    k: usize,
    seed: u64,
) -> Result<(Vec<Vec<f64>>, Vec<u8>), PrepError> {
    validate_matrix(x)?;
    if x.len() != y.len() {
        return Err(PrepError::InvalidParameter(format!(
            "{} rows but {} labels",
            x.len(),
            y.len()
        )));
    }
    validate_labels(y)?;
    if k == 0 {
        return Err(PrepError::InvalidParameter("k must be at least 1".into()));
    }

    let ones = y.iter().filter(|&&v| v == 1).count();
    let zeros = y.len() - ones;
    if ones == zeros {
        return Ok((x.to_vec(), y.to_vec()));
    }
    let minority_label = if ones < zeros { 1 } else { 0 };
    let minority: Vec<usize> =
        (0..y.len()).filter(|&i| y[i] == minority_label).collect();
    if minority.len() < 2 {
        return Err(PrepError::MinorityTooSmall { count: minority.len() });
    }
    let k_eff = k.min(minority.len() - 1);

    // k nearest minority neighbours of each minority sample, squared
    // Euclidean, ties broken by row index, self excluded.
    let neighbours: Vec<Vec<usize>> = minority
        .iter()
        .map(|&i| {
            let mut others: Vec<(f64, usize)> = minority
                .iter()
                .filter(|&&j| j != i)
                .map(|&j| {
                    let d2: f64 = x[i]
                        .iter()
                        .zip(&x[j])
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum();
                    (d2, j)
                })
                .collect();
            others.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
            others.into_iter().take(k_eff).map(|(_, j)| j).collect()
        })
        .collect();

    let n_new = ones.abs_diff(zeros);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out_x = x.to_vec();
    let mut out_y = y.to_vec();
    for _ in 0..n_new {
        let base_pos = rng.gen_range(0..minority.len());
        let neighbour = neighbours[base_pos][rng.gen_range(0..k_eff)];
        let u: f64 = rng.gen();
        let base = &x[minority[base_pos]];
        let synthetic: Vec<f64> = base
            .iter()
            .zip(&x[neighbour])
            .map(|(a, b)| a + u * (b - a))
            .collect();
        out_x.push(synthetic);
        out_y.push(minority_label);
    }
    Ok((out_x, out_y))
}
