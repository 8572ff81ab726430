//! Registry oracle suite: every descriptor recomputed by an independent
//! straight-line reference and compared against the library over randomized
//! series, plus invariance spot-checks under amplitude scaling.
//!
//! The reference machinery lives in `feature_oracles/oracle.rs` so other
//! test targets can reuse it.

mod oracle;

use std::collections::BTreeMap;

use kinemark_core::features::{
    compute_spectral, compute_statistical, compute_temporal, scalar_names, Category,
};
use oracle::{random_series, run_randomized_oracle, DT, FS};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn randomized_series_match_reference_formulas() {
    run_randomized_oracle();
}

#[test]
fn magnitude_descriptors_scale_linearly() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..5 {
        let x = random_series(&mut rng);
        let scaled: Vec<f64> = x.iter().map(|v| v * 37.5).collect();
        let base: BTreeMap<String, f64> = scalar_names(Category::Statistical)
            .into_iter()
            .zip(compute_statistical(&x, DT).unwrap())
            .collect();
        let big: BTreeMap<String, f64> = scalar_names(Category::Statistical)
            .into_iter()
            .zip(compute_statistical(&scaled, DT).unwrap())
            .collect();
        for name in ["Mean", "Max", "Min", "Root mean square", "Peak to peak distance"] {
            let predicted = base[name] * 37.5;
            let actual = big[name];
            let tol = 1e-12 + 1e-12 * predicted.abs().max(actual.abs());
            assert!((predicted - actual).abs() <= tol, "{name}");
        }
    }
}

#[test]
fn counting_and_frequency_descriptors_ignore_positive_scaling() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..5 {
        let x = random_series(&mut rng);
        let scaled: Vec<f64> = x.iter().map(|v| v * 9.25).collect();

        let temporal_base: BTreeMap<String, f64> = scalar_names(Category::Temporal)
            .into_iter()
            .zip(compute_temporal(&x, DT).unwrap())
            .collect();
        let temporal_big: BTreeMap<String, f64> = scalar_names(Category::Temporal)
            .into_iter()
            .zip(compute_temporal(&scaled, DT).unwrap())
            .collect();
        for name in ["Zero crossing rate", "Positive turning points", "Negative turning points"] {
            assert_eq!(temporal_base[name], temporal_big[name], "{name}");
        }

        let spectral_base: BTreeMap<String, f64> = scalar_names(Category::Spectral)
            .into_iter()
            .zip(compute_spectral(&x, FS).unwrap())
            .collect();
        let spectral_big: BTreeMap<String, f64> = scalar_names(Category::Spectral)
            .into_iter()
            .zip(compute_spectral(&scaled, FS).unwrap())
            .collect();
        for name in ["Fundamental frequency", "Spectral roll-off"] {
            assert_eq!(spectral_base[name], spectral_big[name], "{name}");
        }
    }
}
