//! Plain-text report rendering and the reference results shipped for
//! comparison.
//!
//! The reference numbers come from a prior evaluation of this same
//! protocol (50 repetitions, participant-disjoint splits, 50 selected
//! features) on a real head-movement corpus; they give a run something to
//! be read against. All stored values are fractions — 0.760 renders as
//! 76.0%.

use std::fmt::Write;

use super::{EvaluationReport, Setting};
use crate::models::ModelKind;

/// One model's reference metrics as `(mean, standard deviation)` pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceRow {
    pub kind: ModelKind,
    pub accuracy: (f64, f64),
    pub precision: (f64, f64),
    pub recall: (f64, f64),
    pub f1: (f64, f64),
}

fn row(
    kind: ModelKind,
    values: [f64; 8], // percent units: acc, sd, prec, sd, rec, sd, f1, sd
) -> ReferenceRow {
    let f = |i: usize| (values[i] / 100.0, values[i + 1] / 100.0);
    ReferenceRow { kind, accuracy: f(0), precision: f(2), recall: f(4), f1: f(6) }
}

/// Reference results for one setting, in the prior evaluation's row order.
pub fn reference_results(setting: Setting) -> [ReferenceRow; 6] {
    use ModelKind::*;
    match setting {
        Setting::S1 => [
            row(LogisticRegression, [54.3, 8.6, 53.1, 11.3, 48.5, 19.2, 49.8, 14.7]),
            row(RandomForest, [58.0, 9.6, 64.0, 19.4, 30.5, 18.3, 39.7, 19.2]),
            row(GradientBoosting, [63.4, 9.3, 69.5, 13.2, 44.6, 18.6, 58.0, 16.7]),
            row(SupportVectorMachine, [58.8, 8.0, 60.3, 9.6, 47.7, 17.2, 52.2, 13.3]),
            row(KNearestNeighbors, [59.6, 7.9, 60.1, 9.0, 54.0, 16.7, 56.0, 12.6]),
            row(DecisionTree, [61.5, 7.1, 64.9, 11.0, 47.0, 14.8, 53.8, 13.1]),
        ],
        Setting::S2 => [
            row(LogisticRegression, [53.3, 9.3, 51.4, 14.2, 47.4, 20.1, 48.4, 16.7]),
            row(RandomForest, [64.7, 8.8, 76.6, 14.2, 41.6, 14.8, 52.9, 14.9]),
            row(GradientBoosting, [72.7, 7.8, 80.8, 9.9, 60.1, 13.9, 68.0, 10.9]),
            row(SupportVectorMachine, [59.5, 8.0, 61.8, 12.6, 45.8, 15.3, 51.9, 13.7]),
            row(KNearestNeighbors, [56.3, 6.3, 55.3, 5.7, 64.8, 13.6, 59.2, 8.3]),
            row(DecisionTree, [62.1, 6.8, 65.1, 11.9, 48.6, 13.2, 55.2, 12.7]),
        ],
        Setting::S3 => [
            row(LogisticRegression, [54.3, 8.0, 53.7, 10.5, 44.0, 18.2, 47.4, 14.6]),
            row(RandomForest, [66.1, 7.9, 77.7, 11.0, 44.3, 14.6, 55.4, 13.8]),
            row(GradientBoosting, [74.5, 6.6, 81.5, 7.0, 63.6, 12.6, 70.8, 9.4]),
            row(SupportVectorMachine, [60.5, 7.7, 65.5, 10.6, 42.1, 16.5, 50.0, 14.2]),
            row(KNearestNeighbors, [56.9, 6.1, 55.4, 5.1, 67.5, 14.0, 60.5, 8.3]),
            row(DecisionTree, [63.2, 6.5, 66.7, 7.2, 51.3, 13.1, 57.4, 10.5]),
        ],
        Setting::S4 => [
            row(LogisticRegression, [55.6, 9.0, 55.0, 12.3, 46.6, 18.0, 49.6, 15.3]),
            row(RandomForest, [68.2, 8.1, 80.2, 10.5, 47.9, 14.6, 59.1, 13.5]),
            row(GradientBoosting, [76.0, 5.9, 82.7, 6.9, 66.3, 11.5, 73.0, 8.1]),
            row(SupportVectorMachine, [62.0, 7.7, 66.5, 10.8, 46.3, 16.2, 53.5, 14.1]),
            row(KNearestNeighbors, [58.3, 5.6, 56.3, 5.1, 72.0, 13.0, 62.8, 8.1]),
            row(DecisionTree, [64.3, 6.7, 67.4, 7.3, 54.0, 12.9, 59.5, 10.7]),
        ],
    }
}

/// The reference row for one setting and model.
pub fn reference_for(setting: Setting, kind: ModelKind) -> ReferenceRow {
    reference_results(setting)
        .into_iter()
        .find(|r| r.kind == kind)
        .expect("reference table covers every model kind")
}

/// `mean (sd)` in percent with one decimal: `(0.760, 0.059)` → `76.0 (5.9)`.
fn pct(mean: f64, sd: f64) -> String {
    format!("{:.1} ({:.1})", mean * 100.0, sd * 100.0)
}

fn metric_row(name: &str, cells: [String; 4], out: &mut String) {
    let _ = writeln!(out, "{name:<24}{:<16}{:<16}{:<16}{}", cells[0], cells[1], cells[2], cells[3]);
}

const TABLE_HEADER: [&str; 4] = ["Accuracy", "Precision", "Recall", "F1"];

/// Renders a report as aligned plain text: the protocol, the per-model
/// metric table, the best model, the top averaged feature importances, and
/// the reference table for the same setting.
pub fn render_text(report: &EvaluationReport) -> String {
    let mut out = String::new();
    let config = &report.config;

    let _ = writeln!(out, "Cybersickness detection from head kinematics — evaluation report");
    let _ = writeln!(out, "================================================================");
    let _ = writeln!(
        out,
        "Setting:  {} ({})",
        config.setting.name(),
        config.setting.describe()
    );
    let _ = writeln!(out, "Config:   {}", report.config_hash);
    let _ = writeln!(
        out,
        "Corpus:   {} participants, {} windows of {} s, {} features ({} selected per repetition)",
        report.n_participants,
        report.n_windows,
        config.window_len_s,
        report.n_features_total,
        report.n_features_selected,
    );
    let _ = writeln!(
        out,
        "Protocol: {} repetitions, test fraction {:.2}, base seed {}",
        config.repetitions, config.test_fraction, config.base_seed
    );
    let _ = writeln!(out);

    metric_row("Model", TABLE_HEADER.map(String::from), &mut out);
    for summary in &report.models {
        metric_row(
            summary.kind.display_name(),
            [
                pct(summary.accuracy_mean, summary.accuracy_sd),
                pct(summary.precision_mean, summary.precision_sd),
                pct(summary.recall_mean, summary.recall_sd),
                pct(summary.f1_mean, summary.f1_sd),
            ],
            &mut out,
        );
    }
    let _ = writeln!(out, "Percent means over repetitions; parentheses hold standard deviations.");
    let _ = writeln!(out);

    let best = report
        .models
        .iter()
        .find(|m| m.kind == report.best_model)
        .expect("best model is in the roster");
    let _ = writeln!(
        out,
        "Best model: {} (mean accuracy {:.1}%)",
        best.kind.display_name(),
        best.accuracy_mean * 100.0
    );

    if let Some(source) = report.importance_model {
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "Top features (importances of {}, averaged over repetitions):",
            source.display_name()
        );
        for (rank, feature) in report.top_features.iter().take(10).enumerate() {
            let _ = writeln!(out, "  {:>2}. {:<44} {:.4}", rank + 1, feature.name, feature.importance);
        }
    }

    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "Reference results ({}, prior evaluation of this protocol on a real corpus):",
        config.setting.name()
    );
    metric_row("Model", TABLE_HEADER.map(String::from), &mut out);
    for reference in reference_results(config.setting) {
        metric_row(
            reference.kind.display_name(),
            [
                pct(reference.accuracy.0, reference.accuracy.1),
                pct(reference.precision.0, reference.precision.1),
                pct(reference.recall.0, reference.recall.1),
                pct(reference.f1.0, reference.f1.1),
            ],
            &mut out,
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{ExperimentConfig, FeatureImportance, ModelSummary};
    use super::*;
    use crate::models::Metrics;

    #[test]
    fn percent_formatting() {
        assert_eq!(pct(0.760, 0.059), "76.0 (5.9)");
        assert_eq!(pct(0.5, 0.0), "50.0 (0.0)");
        assert_eq!(pct(1.0, 0.132), "100.0 (13.2)");
    }

    #[test]
    fn reference_table_is_complete_and_sane() {
        for setting in Setting::ALL {
            let rows = reference_results(setting);
            for kind in ModelKind::ALL {
                assert_eq!(rows.iter().filter(|r| r.kind == kind).count(), 1, "{setting:?}");
            }
            for r in rows {
                for (mean, sd) in [r.accuracy, r.precision, r.recall, r.f1] {
                    assert!((0.0..=1.0).contains(&mean));
                    assert!((0.0..=0.5).contains(&sd));
                }
            }
        }
    }

    /// The stored fractions come from dividing percentages by 100, which can
    /// land one ulp away from the decimal literal, so compare with a margin
    /// far below the 0.1-percentage-point resolution of the table.
    fn close(actual: (f64, f64), expected: (f64, f64)) {
        assert!((actual.0 - expected.0).abs() < 1e-12, "{actual:?} vs {expected:?}");
        assert!((actual.1 - expected.1).abs() < 1e-12, "{actual:?} vs {expected:?}");
    }

    #[test]
    fn reference_spot_values() {
        let gb = reference_for(Setting::S4, ModelKind::GradientBoosting);
        close(gb.accuracy, (0.760, 0.059));
        close(gb.precision, (0.827, 0.069));
        close(gb.recall, (0.663, 0.115));
        close(gb.f1, (0.730, 0.081));

        let lr = reference_for(Setting::S1, ModelKind::LogisticRegression);
        close(lr.accuracy, (0.543, 0.086));
    }

    fn fabricated_report() -> EvaluationReport {
        let config = ExperimentConfig {
            repetitions: 2,
            roster: vec![ModelKind::GradientBoosting],
            ..ExperimentConfig::default()
        };
        let per_rep = vec![
            Metrics::from_counts(3, 1, 1, 3),
            Metrics::from_counts(4, 0, 2, 2),
        ];
        let config_hash = config.hash();
        EvaluationReport {
            config,
            config_hash,
            n_participants: 8,
            n_windows: 120,
            n_features_total: 3432,
            n_features_selected: 50,
            models: vec![ModelSummary {
                kind: ModelKind::GradientBoosting,
                accuracy_mean: 0.75,
                accuracy_sd: 0.0,
                precision_mean: 0.875,
                precision_sd: 0.125,
                recall_mean: 0.708,
                recall_sd: 0.042,
                f1_mean: 0.776,
                f1_sd: 0.04,
                per_rep,
            }],
            best_model: ModelKind::GradientBoosting,
            importance_model: Some(ModelKind::GradientBoosting),
            top_features: vec![FeatureImportance {
                name: "movement_Roll_Fundamental frequency".into(),
                importance: 0.0726,
            }],
        }
    }

    #[test]
    fn rendered_report_mentions_the_essentials() {
        let text = render_text(&fabricated_report());
        assert!(text.contains("Gradient Boosting"));
        assert!(text.contains("75.0 (0.0)"));
        assert!(text.contains("Best model: Gradient Boosting (mean accuracy 75.0%)"));
        assert!(text.contains("movement_Roll_Fundamental frequency"));
        assert!(text.contains("Reference results (S4"));
        // The reference block carries the full roster even when the run
        // evaluated a subset.
        assert!(text.contains("Support Vector Machine"));
        assert!(text.contains("76.0 (5.9)"));
    }
}
