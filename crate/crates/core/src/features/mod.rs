//! Feature extraction over kinematic windows.
//!
//! Every window yields the same fixed vocabulary of per-series descriptors —
//! 20 statistical, 14 temporal, 26 spectral — applied to each (derivative
//! order, channel) pair. The vocabulary lives in a frozen registry: name,
//! category, output arity, and formula text per descriptor. Multi-output
//! descriptors expand into `_0 .. _{arity-1}` scalars, so one series maps to
//! 143 values and a movement-only window over six channels to 858.
//!
//! Scalar names follow `{order}_{Channel}_{Descriptor}[_k]`, e.g.
//! `movement_Roll_Fundamental frequency` or `jerk_X_Wavelet energy_3`.

mod spectral;
mod statistical;
mod temporal;

use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::SegmentLabel;
use crate::kinematics::{Channel, Order, WindowInstance};
use spectral::SpectralContext;

#[derive(Debug, Error)]
pub enum FeatureError {
    #[error("series too short: {n} samples, need at least {min}")]
    SeriesTooShort { n: usize, min: usize },
    #[error("invalid order set: {0}")]
    InvalidOrderSet(&'static str),
    #[error("window length {actual} does not match the engine's {expected}")]
    WindowMismatch { expected: usize, actual: usize },
    #[error("no windows to extract")]
    EmptyWindowSet,
    #[error("feature {name} evaluated to a non-finite value")]
    NonFiniteFeature { name: String },
    #[error("missing column: {0}")]
    MissingColumn(String),
    #[error("unparsable cell at row {row}, column {column}")]
    BadCell { row: usize, column: String },
    #[error("row {row} has label {value:?}, expected 0 or 1")]
    BadLabel { row: usize, value: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Descriptor family, which also fixes the block order within a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Category {
    Statistical,
    Temporal,
    Spectral,
}

impl Category {
    pub fn name(self) -> &'static str {
        match self {
            Category::Statistical => "statistical",
            Category::Temporal => "temporal",
            Category::Spectral => "spectral",
        }
    }
}

/// One registry entry: a named descriptor with a fixed output arity.
#[derive(Debug, Clone, Copy)]
pub struct Descriptor {
    pub name: &'static str,
    pub category: Category,
    pub arity: usize,
    pub formula: &'static str,
}

const fn desc(
    name: &'static str,
    category: Category,
    arity: usize,
    formula: &'static str,
) -> Descriptor {
    Descriptor { name, category, arity, formula }
}

/// The frozen descriptor registry, in emission order within each category.
/// Arity never depends on the data; changing anything here is a format break
/// for every stored feature matrix.
const REGISTRY: &[Descriptor] = &[
    desc("Absolute energy", Category::Statistical, 1, "sum(x^2)"),
    desc("Average power", Category::Statistical, 1, "sum(x^2) / ((n-1)*dt)"),
    desc("ECDF", Category::Statistical, 10, "CDF values (i+1)/n at 10 evenly spread sorted ranks"),
    desc(
        "ECDF Percentile",
        Category::Statistical,
        2,
        "smallest sample with empirical CDF >= p, for p in {0.2, 0.8}",
    ),
    desc(
        "ECDF Percentile Count",
        Category::Statistical,
        2,
        "count of samples <= the p-percentile sample, for p in {0.2, 0.8}",
    ),
    desc("Entropy", Category::Statistical, 1, "-sum(p*log2(p)) over the normalized 10-bin histogram"),
    desc("Histogram", Category::Statistical, 10, "counts in 10 equal-width bins over [min, max]"),
    desc("Interquartile range", Category::Statistical, 1, "q(0.75) - q(0.25), linear interpolation"),
    desc("Kurtosis", Category::Statistical, 1, "m4/m2^2 - 3, population moments; 0 if m2 = 0"),
    desc("Max", Category::Statistical, 1, "max(x)"),
    desc("Mean", Category::Statistical, 1, "mean(x)"),
    desc("Mean absolute deviation", Category::Statistical, 1, "mean(|x - mean(x)|)"),
    desc("Median", Category::Statistical, 1, "median(x)"),
    desc("Median absolute deviation", Category::Statistical, 1, "median(|x - median(x)|)"),
    desc("Min", Category::Statistical, 1, "min(x)"),
    desc("Peak to peak distance", Category::Statistical, 1, "max(x) - min(x)"),
    desc("Root mean square", Category::Statistical, 1, "sqrt(mean(x^2))"),
    desc("Skewness", Category::Statistical, 1, "m3/m2^1.5, population g1; 0 if m2 = 0"),
    desc("Standard deviation", Category::Statistical, 1, "population standard deviation"),
    desc("Variance", Category::Statistical, 1, "population variance"),
    desc("Area under the curve", Category::Temporal, 1, "trapezoid over t = i*dt"),
    desc("Autocorrelation", Category::Temporal, 1, "sum(x[i]*x[i+1]) / sum(x^2); 0 if all-zero"),
    desc("Centroid", Category::Temporal, 1, "sum(t*x^2) / sum(x^2); 0 if all-zero"),
    desc("Mean absolute diff", Category::Temporal, 1, "mean(|diff(x)|)"),
    desc("Mean diff", Category::Temporal, 1, "mean(diff(x))"),
    desc("Median absolute diff", Category::Temporal, 1, "median(|diff(x)|)"),
    desc("Median diff", Category::Temporal, 1, "median(diff(x))"),
    desc("Negative turning points", Category::Temporal, 1, "count of strict local minima"),
    desc(
        "Neighbourhood peaks",
        Category::Temporal,
        1,
        "samples above the mean exceeding all neighbors within radius 10",
    ),
    desc("Positive turning points", Category::Temporal, 1, "count of strict local maxima"),
    desc("Signal distance", Category::Temporal, 1, "sum(sqrt(1 + diff(x)^2))"),
    desc("Slope", Category::Temporal, 1, "least-squares slope of x against t"),
    desc("Sum absolute diff", Category::Temporal, 1, "sum(|diff(x)|)"),
    desc(
        "Zero crossing rate",
        Category::Temporal,
        1,
        "strict sign changes between consecutive samples; zeros inherit the previous sign",
    ),
    desc("FFT mean coefficient", Category::Spectral, 10, "mean |DFT| within 10 equal bands of [0, fs/2]"),
    desc("Fundamental frequency", Category::Spectral, 1, "argmax of M(f) excluding DC; 0 for a zero spectrum"),
    desc("Human range energy", Category::Spectral, 1, "PSD fraction inside [0.6, 2.5] Hz"),
    desc("LPCC", Category::Spectral, 12, "cepstra of the order-11 linear predictor (Levinson-Durbin)"),
    desc("MFCC", Category::Spectral, 12, "DCT-II of 26 mel-filter log energies; first 12"),
    desc("Max power spectrum", Category::Spectral, 1, "max of the periodogram PSD"),
    desc("Maximum frequency", Category::Spectral, 1, "smallest f with cumulative M >= 95% of total"),
    desc("Median frequency", Category::Spectral, 1, "smallest f with cumulative PSD >= 50% of total"),
    desc("Power bandwidth", Category::Spectral, 1, "width of the contiguous half-max band around the PSD peak"),
    desc("Spectral centroid", Category::Spectral, 1, "sum(f*M) / sum(M)"),
    desc("Spectral decrease", Category::Spectral, 1, "sum((M_k - M_0)/k) / sum(M_k) over k >= 1"),
    desc("Spectral distance", Category::Spectral, 1, "sum(linear ramp - cumulative M)"),
    desc("Spectral entropy", Category::Spectral, 1, "entropy of normalized PSD, scaled by 1/log2(K)"),
    desc("Spectral kurtosis", Category::Spectral, 1, "4th moment of M about the centroid / spread^4"),
    desc("Spectral positive turning points", Category::Spectral, 1, "strict local maxima of M"),
    desc("Spectral roll-off", Category::Spectral, 1, "smallest f with cumulative M^2 >= 95% of energy"),
    desc("Spectral roll-on", Category::Spectral, 1, "smallest f with cumulative M^2 >= 5% of energy"),
    desc("Spectral skewness", Category::Spectral, 1, "3rd moment of M about the centroid / spread^3"),
    desc("Spectral slope", Category::Spectral, 1, "least-squares slope of M against f"),
    desc("Spectral spread", Category::Spectral, 1, "sqrt(2nd moment of M about the centroid)"),
    desc("Spectral variation", Category::Spectral, 1, "1 - correlation of adjacent-bin magnitudes"),
    desc("Wavelet absolute mean", Category::Spectral, 9, "mean |CWT| per Ricker width 1..9"),
    desc("Wavelet energy", Category::Spectral, 9, "RMS of CWT coefficients per width"),
    desc("Wavelet entropy", Category::Spectral, 1, "entropy of the width-wise energy distribution"),
    desc("Wavelet standard deviation", Category::Spectral, 9, "std of CWT coefficients per width"),
    desc("Wavelet variance", Category::Spectral, 9, "variance of CWT coefficients per width"),
];

/// The frozen descriptor registry.
pub fn registry() -> &'static [Descriptor] {
    REGISTRY
}

/// Expanded scalar names of one category, `_k`-suffixed for arity > 1.
pub fn scalar_names(category: Category) -> Vec<String> {
    REGISTRY
        .iter()
        .filter(|d| d.category == category)
        .flat_map(|d| {
            (0..d.arity).map(move |k| {
                if d.arity == 1 {
                    d.name.to_string()
                } else {
                    format!("{}_{k}", d.name)
                }
            })
        })
        .collect()
}

/// Number of scalars one series produces (all categories).
pub fn per_series_arity() -> usize {
    REGISTRY.iter().map(|d| d.arity).sum()
}

fn per_series_names() -> Vec<String> {
    let mut names = scalar_names(Category::Statistical);
    names.extend(scalar_names(Category::Temporal));
    names.extend(scalar_names(Category::Spectral));
    names
}

fn validate_orders(orders: &[Order]) -> Result<(), FeatureError> {
    if orders.is_empty() {
        return Err(FeatureError::InvalidOrderSet("order set is empty"));
    }
    if !orders.contains(&Order::Movement) {
        return Err(FeatureError::InvalidOrderSet("order set must contain movement"));
    }
    for (i, order) in orders.iter().enumerate() {
        if orders[..i].contains(order) {
            return Err(FeatureError::InvalidOrderSet("order set repeats an order"));
        }
    }
    Ok(())
}

/// Full scalar names of a window vector over the given orders, in extraction
/// order: orders as given, channels X..Yaw, descriptors in registry order.
pub fn feature_names(orders: &[Order]) -> Result<Vec<String>, FeatureError> {
    validate_orders(orders)?;
    let per_series = per_series_names();
    let mut names = Vec::with_capacity(orders.len() * Channel::ALL.len() * per_series.len());
    for order in orders {
        for channel in Channel::ALL {
            for scalar in &per_series {
                names.push(format!("{}_{}_{}", order.name(), channel.name(), scalar));
            }
        }
    }
    Ok(names)
}

/// All 20 statistical descriptors of one series (40 scalars, registry order).
pub fn compute_statistical(x: &[f64], dt_s: f64) -> Result<Vec<f64>, FeatureError> {
    if x.len() < 4 {
        return Err(FeatureError::SeriesTooShort { n: x.len(), min: 4 });
    }
    let mut out = Vec::with_capacity(statistical::N_SCALARS);
    statistical::compute(x, dt_s, &mut out);
    Ok(out)
}

/// All 14 temporal descriptors of one series (registry order).
pub fn compute_temporal(x: &[f64], dt_s: f64) -> Result<Vec<f64>, FeatureError> {
    if x.len() < 4 {
        return Err(FeatureError::SeriesTooShort { n: x.len(), min: 4 });
    }
    let mut out = Vec::with_capacity(temporal::N_SCALARS);
    temporal::compute(x, dt_s, &mut out);
    Ok(out)
}

/// All 26 spectral descriptors of one series (89 scalars, registry order).
///
/// Builds the spectral machinery (FFT plan, filterbank, wavelet kernels) on
/// the fly; use a [`FeatureEngine`] to amortize that over many windows.
pub fn compute_spectral(x: &[f64], sample_rate_hz: f64) -> Result<Vec<f64>, FeatureError> {
    if x.len() < 8 {
        return Err(FeatureError::SeriesTooShort { n: x.len(), min: 8 });
    }
    let ctx = SpectralContext::new(x.len(), sample_rate_hz);
    let mut out = Vec::with_capacity(spectral::N_SCALARS);
    spectral::compute(x, &ctx, &mut out);
    Ok(out)
}

/// One-sided power spectral density of one series, as `(bin frequencies,
/// psd)` with `n/2 + 1` entries each.
///
/// `psd[k] = |X_k|² / (fs·n)`, doubled for every bin except DC and — for
/// even `n` — Nyquist, so the one-sided view preserves power:
/// `sum(psd) · fs / n` equals the mean square of the series up to FFT
/// rounding (Parseval). This is the same spectrum the spectral descriptors
/// are computed from.
pub fn power_spectral_density(
    x: &[f64],
    sample_rate_hz: f64,
) -> Result<(Vec<f64>, Vec<f64>), FeatureError> {
    if x.is_empty() {
        return Err(FeatureError::SeriesTooShort { n: 0, min: 1 });
    }
    Ok(spectral::power_spectral_density(x, sample_rate_hz))
}

/// One extracted window: provenance plus the flat value vector. Scalar names
/// live once in the surrounding [`FeatureMatrix`], parallel to `values`.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub participant_id: String,
    pub label: SegmentLabel,
    pub window_index: usize,
    pub values: Vec<f64>,
}

/// Feature vectors of many windows sharing one name vector.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    pub names: Vec<String>,
    pub rows: Vec<FeatureVector>,
}

impl FeatureMatrix {
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_features(&self) -> usize {
        self.names.len()
    }

    pub fn labels(&self) -> Vec<SegmentLabel> {
        self.rows.iter().map(|r| r.label).collect()
    }

    /// Writes the matrix as delimited text: three provenance columns, then
    /// one column per feature at 17 significant digits (exact round-trip).
    pub fn write_csv(&self, out: impl Write) -> Result<(), FeatureError> {
        let mut writer = csv::Writer::from_writer(out);
        let mut header = vec!["participant_id".to_string(), "label".into(), "window_index".into()];
        header.extend(self.names.iter().cloned());
        writer.write_record(&header)?;
        for row in &self.rows {
            let mut record = vec![
                row.participant_id.clone(),
                row.label.as_u8().to_string(),
                row.window_index.to_string(),
            ];
            record.extend(row.values.iter().map(|v| format!("{v:.16e}")));
            writer.write_record(&record)?;
        }
        writer.flush()?;
        Ok(())
    }

    /// Reads a matrix previously written by [`FeatureMatrix::write_csv`].
    pub fn read_csv(source: impl Read) -> Result<Self, FeatureError> {
        let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(source);
        let headers = reader.headers()?.clone();
        for (i, expected) in ["participant_id", "label", "window_index"].iter().enumerate() {
            if headers.get(i).map(str::trim) != Some(*expected) {
                return Err(FeatureError::MissingColumn(expected.to_string()));
            }
        }
        let names: Vec<String> = headers.iter().skip(3).map(str::to_string).collect();

        let mut rows = Vec::new();
        for (row_idx, record) in reader.records().enumerate() {
            let record = record?;
            let cell = |i: usize| {
                record.get(i).ok_or_else(|| FeatureError::BadCell {
                    row: row_idx,
                    column: headers.get(i).unwrap_or("?").to_string(),
                })
            };
            let label = match cell(1)?.trim() {
                "0" => SegmentLabel::NotSick,
                "1" => SegmentLabel::Sick,
                other => {
                    return Err(FeatureError::BadLabel { row: row_idx, value: other.to_string() })
                }
            };
            let window_index = cell(2)?.trim().parse().map_err(|_| FeatureError::BadCell {
                row: row_idx,
                column: "window_index".into(),
            })?;
            let mut values = Vec::with_capacity(names.len());
            for (j, name) in names.iter().enumerate() {
                let text = cell(3 + j)?;
                let value: f64 = text.trim().parse().map_err(|_| FeatureError::BadCell {
                    row: row_idx,
                    column: name.clone(),
                })?;
                values.push(value);
            }
            rows.push(FeatureVector {
                participant_id: cell(0)?.to_string(),
                label,
                window_index,
                values,
            });
        }
        Ok(FeatureMatrix { names, rows })
    }
}

/// Reusable extraction machinery for windows of one fixed length and rate.
pub struct FeatureEngine {
    spectral: SpectralContext,
    dt_s: f64,
    per_series_names: Vec<String>,
}

impl FeatureEngine {
    pub fn new(window_samples: usize, sample_rate_hz: f64) -> Result<Self, FeatureError> {
        if window_samples < 8 {
            return Err(FeatureError::SeriesTooShort { n: window_samples, min: 8 });
        }
        Ok(Self {
            spectral: SpectralContext::new(window_samples, sample_rate_hz),
            dt_s: 1.0 / sample_rate_hz,
            per_series_names: per_series_names(),
        })
    }

    /// Extracts the full vector of one window over the given orders.
    pub fn extract_window(
        &self,
        window: &WindowInstance,
        orders: &[Order],
    ) -> Result<FeatureVector, FeatureError> {
        validate_orders(orders)?;
        if window.len() != self.spectral.n_samples() {
            return Err(FeatureError::WindowMismatch {
                expected: self.spectral.n_samples(),
                actual: window.len(),
            });
        }
        let per_series = self.per_series_names.len();
        let mut values = Vec::with_capacity(orders.len() * Channel::ALL.len() * per_series);
        for &order in orders {
            for channel in Channel::ALL {
                let series = window.get(order, channel);
                statistical::compute(series, self.dt_s, &mut values);
                temporal::compute(series, self.dt_s, &mut values);
                spectral::compute(series, &self.spectral, &mut values);
            }
        }

        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            let series_idx = bad / per_series;
            let order = orders[series_idx / Channel::ALL.len()];
            let channel = Channel::ALL[series_idx % Channel::ALL.len()];
            return Err(FeatureError::NonFiniteFeature {
                name: format!(
                    "{}_{}_{}",
                    order.name(),
                    channel.name(),
                    self.per_series_names[bad % per_series]
                ),
            });
        }

        Ok(FeatureVector {
            participant_id: window.participant_id.clone(),
            label: window.label,
            window_index: window.window_index,
            values,
        })
    }
}

/// Extracts every window in parallel into one matrix. All windows must share
/// the first window's length and sample rate.
pub fn extract_matrix(
    windows: &[WindowInstance],
    orders: &[Order],
) -> Result<FeatureMatrix, FeatureError> {
    let first = windows.first().ok_or(FeatureError::EmptyWindowSet)?;
    let engine = FeatureEngine::new(first.len(), first.sample_rate_hz)?;
    let names = feature_names(orders)?;
    let rows: Vec<FeatureVector> = windows
        .par_iter()
        .map(|w| engine.extract_window(w, orders))
        .collect::<Result<_, _>>()?;
    Ok(FeatureMatrix { names, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::N_CHANNELS;
    use crate::kinematics::{build_stack, window_stack};

    fn demo_windows(n: usize) -> Vec<WindowInstance> {
        let channels: [Vec<f64>; N_CHANNELS] = std::array::from_fn(|c| {
            (0..n)
                .map(|i| {
                    let t = i as f64 / 60.0;
                    ((c + 1) as f64 * t * 2.1).sin() + 0.1 * (t * 31.0).cos()
                })
                .collect()
        });
        let stack = build_stack(&channels, 60.0).unwrap();
        window_stack(&stack, "p1", SegmentLabel::NotSick, 1.0, 1.0).unwrap()
    }

    #[test]
    fn registry_arities_sum_to_143() {
        assert_eq!(per_series_arity(), 143);
        assert_eq!(scalar_names(Category::Statistical).len(), 40);
        assert_eq!(scalar_names(Category::Temporal).len(), 14);
        assert_eq!(scalar_names(Category::Spectral).len(), 89);
        assert_eq!(registry().len(), 60);
    }

    #[test]
    fn movement_only_names_cover_six_channels() {
        let names = feature_names(&[Order::Movement]).unwrap();
        assert_eq!(names.len(), 6 * per_series_arity());
        assert_eq!(names[0], "movement_X_Absolute energy");
        assert!(names.contains(&"movement_Roll_Fundamental frequency".to_string()));
    }

    #[test]
    fn four_order_names_are_proportional() {
        let movement = feature_names(&[Order::Movement]).unwrap();
        let all = feature_names(&Order::ALL).unwrap();
        assert_eq!(all.len(), 4 * movement.len());
        assert_eq!(all.len(), 3432);
        assert!(all.contains(&"jerk_Yaw_Wavelet variance_8".to_string()));
        // No duplicate names anywhere.
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
    }

    #[test]
    fn order_set_must_contain_movement() {
        assert!(matches!(
            feature_names(&[Order::Velocity]),
            Err(FeatureError::InvalidOrderSet(_))
        ));
        assert!(matches!(feature_names(&[]), Err(FeatureError::InvalidOrderSet(_))));
        assert!(matches!(
            feature_names(&[Order::Movement, Order::Movement]),
            Err(FeatureError::InvalidOrderSet(_))
        ));
    }

    #[test]
    fn compute_wrappers_guard_length() {
        assert!(matches!(
            compute_statistical(&[1.0, 2.0, 3.0], 1.0),
            Err(FeatureError::SeriesTooShort { n: 3, min: 4 })
        ));
        assert!(matches!(
            compute_temporal(&[1.0; 3], 1.0),
            Err(FeatureError::SeriesTooShort { .. })
        ));
        assert!(matches!(
            compute_spectral(&[1.0; 7], 60.0),
            Err(FeatureError::SeriesTooShort { n: 7, min: 8 })
        ));
        assert_eq!(compute_spectral(&[1.0; 8], 60.0).unwrap().len(), 89);
    }

    #[test]
    fn extracted_vector_is_finite_and_sized() {
        let windows = demo_windows(120);
        let engine = FeatureEngine::new(60, 60.0).unwrap();
        let vector = engine.extract_window(&windows[0], &[Order::Movement]).unwrap();
        assert_eq!(vector.values.len(), 858);
        assert!(vector.values.iter().all(|v| v.is_finite()));
        let full = engine.extract_window(&windows[1], &Order::ALL).unwrap();
        assert_eq!(full.values.len(), 3432);
        assert!(full.values.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn extraction_is_bit_deterministic() {
        let windows = demo_windows(60);
        let engine = FeatureEngine::new(60, 60.0).unwrap();
        let a = engine.extract_window(&windows[0], &Order::ALL).unwrap();
        let b = engine.extract_window(&windows[0], &Order::ALL).unwrap();
        let other_engine = FeatureEngine::new(60, 60.0).unwrap();
        let c = other_engine.extract_window(&windows[0], &Order::ALL).unwrap();
        for i in 0..a.values.len() {
            assert_eq!(a.values[i].to_bits(), b.values[i].to_bits());
            assert_eq!(a.values[i].to_bits(), c.values[i].to_bits());
        }
    }

    #[test]
    fn constant_window_is_still_finite() {
        let channels: [Vec<f64>; N_CHANNELS] = std::array::from_fn(|c| vec![c as f64; 60]);
        let stack = build_stack(&channels, 60.0).unwrap();
        let windows = window_stack(&stack, "p", SegmentLabel::Sick, 1.0, 1.0).unwrap();
        let matrix = extract_matrix(&windows, &Order::ALL).unwrap();
        assert!(matrix.rows[0].values.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn engine_rejects_mismatched_window() {
        let windows = demo_windows(120);
        let engine = FeatureEngine::new(120, 60.0).unwrap();
        let err = engine.extract_window(&windows[0], &[Order::Movement]).unwrap_err();
        assert!(matches!(err, FeatureError::WindowMismatch { expected: 120, actual: 60 }));
    }

    #[test]
    fn matrix_extraction_keeps_window_order() {
        let windows = demo_windows(300);
        let matrix = extract_matrix(&windows, &[Order::Movement]).unwrap();
        assert_eq!(matrix.n_rows(), 5);
        assert_eq!(matrix.n_features(), 858);
        for (i, row) in matrix.rows.iter().enumerate() {
            assert_eq!(row.window_index, i);
        }
    }

    #[test]
    fn matrix_csv_round_trip_is_bit_exact() {
        let windows = demo_windows(180);
        let matrix = extract_matrix(&windows, &[Order::Movement, Order::Velocity]).unwrap();
        let mut buffer = Vec::new();
        matrix.write_csv(&mut buffer).unwrap();
        let reloaded = FeatureMatrix::read_csv(buffer.as_slice()).unwrap();
        assert_eq!(reloaded.names, matrix.names);
        assert_eq!(reloaded.n_rows(), matrix.n_rows());
        for (a, b) in matrix.rows.iter().zip(&reloaded.rows) {
            assert_eq!(a.participant_id, b.participant_id);
            assert_eq!(a.label, b.label);
            assert_eq!(a.window_index, b.window_index);
            for (x, y) in a.values.iter().zip(&b.values) {
                assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }
}
