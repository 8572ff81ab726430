//! Statistical descriptors: distribution shape and magnitude of one series.

/// Number of scalars the statistical category emits per series.
pub(crate) const N_SCALARS: usize = 40;

/// Appends all 20 statistical descriptors (40 scalars) in registry order.
///
/// `dt_s` enters only through average power, which normalizes the energy by
/// the series duration `(n - 1) * dt_s`.
pub(crate) fn compute(x: &[f64], dt_s: f64, out: &mut Vec<f64>) {
    let n = x.len();
    let nf = n as f64;

    let abs_energy: f64 = x.iter().map(|v| v * v).sum();
    out.push(abs_energy);
    out.push(abs_energy / ((nf - 1.0) * dt_s));

    let mut sorted = x.to_vec();
    sorted.sort_by(f64::total_cmp);

    // ECDF: the y-values (i+1)/n at 10 evenly spread sorted-order indices.
    for k in 0..10 {
        let idx = (k as f64 * (nf - 1.0) / 9.0).round() as usize;
        out.push((idx + 1) as f64 / nf);
    }

    // ECDF percentile: smallest sample whose empirical CDF reaches p.
    let pct_values: [f64; 2] = [0.2, 0.8].map(|p: f64| {
        let rank = ((p * nf).ceil() as usize).clamp(1, n) - 1;
        sorted[rank]
    });
    out.extend(pct_values);
    for v in pct_values {
        out.push(x.iter().filter(|&&s| s <= v).count() as f64);
    }

    let (histogram, entropy) = histogram_and_entropy(x, &sorted);
    out.push(entropy);
    out.extend(histogram);

    out.push(quantile(&sorted, 0.75) - quantile(&sorted, 0.25));

    let mean = x.iter().sum::<f64>() / nf;
    let (m2, m3, m4) = central_moments(x, mean);
    let kurtosis = if m2 == 0.0 { 0.0 } else { m4 / (m2 * m2) - 3.0 };
    out.push(kurtosis);

    let max = sorted[n - 1];
    let min = sorted[0];
    let median = quantile(&sorted, 0.5);
    out.push(max);
    out.push(mean);
    out.push(x.iter().map(|v| (v - mean).abs()).sum::<f64>() / nf);
    out.push(median);
    let mut abs_dev: Vec<f64> = x.iter().map(|v| (v - median).abs()).collect();
    abs_dev.sort_by(f64::total_cmp);
    out.push(quantile(&abs_dev, 0.5));
    out.push(min);
    out.push(max - min);
    out.push((abs_energy / nf).sqrt());
    let skewness = if m2 == 0.0 { 0.0 } else { m3 / m2.powf(1.5) };
    out.push(skewness);
    out.push(m2.sqrt());
    out.push(m2);
}

/// Linear-interpolation quantile of an already sorted slice.
pub(crate) fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let frac = pos - lo as f64;
    if frac == 0.0 {
        sorted[lo]
    } else {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    }
}

/// Population central moments m2, m3, m4 about `mean`.
fn central_moments(x: &[f64], mean: f64) -> (f64, f64, f64) {
    let nf = x.len() as f64;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for v in x {
        let d = v - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    (m2 / nf, m3 / nf, m4 / nf)
}

/// 10 equal-width bin counts over [min, max] and the Shannon entropy (base 2)
/// of the normalized counts. A constant series collapses into bin 0, whose
/// single-spike distribution has entropy 0.
fn histogram_and_entropy(x: &[f64], sorted: &[f64]) -> ([f64; 10], f64) {
    let (min, max) = (sorted[0], sorted[sorted.len() - 1]);
    let mut bins = [0.0f64; 10];
    if min == max {
        bins[0] = x.len() as f64;
    } else {
        let width = (max - min) / 10.0;
        for v in x {
            let bin = (((v - min) / width) as usize).min(9);
            bins[bin] += 1.0;
        }
    }
    let nf = x.len() as f64;
    let entropy = -bins
        .iter()
        .filter(|&&c| c > 0.0)
        .map(|&c| {
            let p = c / nf;
            p * p.log2()
        })
        .sum::<f64>();
    (bins, entropy)
}
