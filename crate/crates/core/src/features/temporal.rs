//! Temporal descriptors: trajectory shape of one series over time.

/// Number of scalars the temporal category emits per series.
pub(crate) const N_SCALARS: usize = 14;

/// Radius (in samples) a neighbourhood peak must dominate on each side.
const PEAK_RADIUS: usize = 10;

/// Appends all 14 temporal descriptors in registry order. Sample `i` sits at
/// time `i * dt_s`.
pub(crate) fn compute(x: &[f64], dt_s: f64, out: &mut Vec<f64>) {
    let n = x.len();
    let nf = n as f64;

    let mut diffs: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();

    out.push(trapezoid_area(x, dt_s));

    let energy: f64 = x.iter().map(|v| v * v).sum();
    let lag1: f64 = x.windows(2).map(|w| w[0] * w[1]).sum();
    out.push(if energy == 0.0 { 0.0 } else { lag1 / energy });

    let weighted_time: f64 =
        x.iter().enumerate().map(|(i, v)| i as f64 * dt_s * v * v).sum();
    out.push(if energy == 0.0 { 0.0 } else { weighted_time / energy });

    let n_diffs = diffs.len() as f64;
    out.push(diffs.iter().map(|d| d.abs()).sum::<f64>() / n_diffs);
    out.push(diffs.iter().sum::<f64>() / n_diffs);
    let mut abs_diffs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    abs_diffs.sort_by(f64::total_cmp);
    out.push(super::statistical::quantile(&abs_diffs, 0.5));
    diffs.sort_by(f64::total_cmp);
    out.push(super::statistical::quantile(&diffs, 0.5));

    let mut negative_turns = 0.0;
    let mut positive_turns = 0.0;
    for w in x.windows(3) {
        if w[0] > w[1] && w[1] < w[2] {
            negative_turns += 1.0;
        }
        if w[0] < w[1] && w[1] > w[2] {
            positive_turns += 1.0;
        }
    }
    out.push(negative_turns);
    out.push(neighbourhood_peaks(x));
    out.push(positive_turns);

    out.push(x.windows(2).map(|w| (1.0 + (w[1] - w[0]).powi(2)).sqrt()).sum());

    // OLS slope of x against t. The time mean is (n-1)·dt/2.
    let t_mean = (nf - 1.0) * dt_s / 2.0;
    let x_mean = x.iter().sum::<f64>() / nf;
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, v) in x.iter().enumerate() {
        let td = i as f64 * dt_s - t_mean;
        num += td * (v - x_mean);
        den += td * td;
    }
    out.push(if den == 0.0 { 0.0 } else { num / den });

    out.push(x.windows(2).map(|w| (w[1] - w[0]).abs()).sum());
    out.push(zero_crossings(x));
}

/// Trapezoidal area under the sampled curve, `Σ (x[i] + x[i+1]) / 2 · dt`.
fn trapezoid_area(x: &[f64], dt_s: f64) -> f64 {
    x.windows(2).map(|w| 0.5 * (w[0] + w[1]) * dt_s).sum()
}

/// Samples strictly greater than every neighbor within [`PEAK_RADIUS`]
/// samples (clipped at the boundaries) and strictly above the series mean.
fn neighbourhood_peaks(x: &[f64]) -> f64 {
    let n = x.len();
    let mean = x.iter().sum::<f64>() / n as f64;
    let mut count = 0.0;
    for i in 0..n {
        if x[i] <= mean {
            continue;
        }
        let lo = i.saturating_sub(PEAK_RADIUS);
        let hi = (i + PEAK_RADIUS + 1).min(n);
        if (lo..hi).all(|j| j == i || x[i] > x[j]) {
            count += 1.0;
        }
    }
    count
}

/// Strict sign changes between consecutive samples; zero samples inherit the
/// previous sign, so a touch of the axis without a crossing does not count.
fn zero_crossings(x: &[f64]) -> f64 {
    let mut count = 0.0;
    let mut prev = 0i8;
    for &v in x {
        let sign = if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            prev
        };
        if prev != 0 && sign != prev {
            count += 1.0;
        }
        prev = sign;
    }
    count
}
