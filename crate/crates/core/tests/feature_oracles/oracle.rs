//! Independent straight-line references for every registry descriptor, and
//! the randomized comparison loop that pits them against the library.
//!
//! The references here deliberately avoid the library's machinery: the
//! spectrum comes from a direct O(n²) DFT rather than the FFT, and the
//! quantiles, linear-prediction recursion, mel filterbank, and wavelet
//! correlations are all rewritten from the registry formula text. Agreement
//! is required within 1e-9 relative (statistical, temporal) and 1e-6
//! relative (spectral), with small absolute floors for values near zero.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::TAU;

use kinemark_core::features::{
    compute_spectral, compute_statistical, compute_temporal, scalar_names, Category,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const FS: f64 = 60.0;
pub const DT: f64 = 1.0 / FS;
const N: usize = 60;

/// One series: up to three sinusoids plus uniform noise and a DC offset.
pub fn random_series(rng: &mut ChaCha8Rng) -> Vec<f64> {
    let tones: Vec<(f64, f64, f64)> = (0..rng.gen_range(1..=3))
        .map(|_| {
            (
                rng.gen_range(0.5..25.0),
                rng.gen_range(0.2..3.0),
                rng.gen_range(0.0..TAU),
            )
        })
        .collect();
    let offset = rng.gen_range(-2.0..2.0);
    let noise = rng.gen_range(0.0..0.5);
    (0..N)
        .map(|i| {
            let t = i as f64 / FS;
            offset
                + tones.iter().map(|(f, a, p)| a * (TAU * f * t + p).sin()).sum::<f64>()
                + noise * rng.gen_range(-1.0..=1.0)
        })
        .collect()
}

fn mean_of(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

fn ascending(x: &[f64]) -> Vec<f64> {
    let mut s = x.to_vec();
    s.sort_by(f64::total_cmp);
    s
}

/// Linear-interpolation quantile of an ascending slice.
fn quantile_ref(s: &[f64], q: f64) -> f64 {
    let pos = q * (s.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    s[lo] + (pos - lo as f64) * (s[hi] - s[lo])
}

// ---------------------------------------------------------------- statistical

fn statistical_reference(x: &[f64], dt: f64) -> BTreeMap<String, f64> {
    let n = x.len();
    let nf = n as f64;
    let s = ascending(x);
    let mut out = BTreeMap::new();

    let energy = x.iter().fold(0.0, |acc, v| acc + v * v);
    out.insert("Absolute energy".into(), energy);
    out.insert("Average power".into(), energy / ((nf - 1.0) * dt));

    // ECDF: y-values (rank+1)/n at 10 evenly spread sorted-order indices.
    for k in 0..10 {
        let idx = (k as f64 * (nf - 1.0) / 9.0).round() as usize;
        out.insert(format!("ECDF_{k}"), (idx + 1) as f64 / nf);
    }

    // Percentile p: the smallest sample whose empirical CDF reaches p.
    for (slot, p) in [(0, 0.2), (1, 0.8)] {
        let rank = ((p * nf).ceil() as usize).clamp(1, n) - 1;
        let value = s[rank];
        out.insert(format!("ECDF Percentile_{slot}"), value);
        let count = x.iter().filter(|&&v| v <= value).count();
        out.insert(format!("ECDF Percentile Count_{slot}"), count as f64);
    }

    // 10 equal-width bins over [min, max]; a constant series collapses
    // into bin 0. Entropy is Shannon (base 2) of the normalized counts.
    let (min, max) = (s[0], s[n - 1]);
    let mut bins = [0.0f64; 10];
    if min == max {
        bins[0] = nf;
    } else {
        let width = (max - min) / 10.0;
        for &v in x {
            bins[(((v - min) / width) as usize).min(9)] += 1.0;
        }
    }
    let entropy: f64 = bins
        .iter()
        .filter(|&&c| c > 0.0)
        .map(|&c| {
            let p = c / nf;
            -p * p.log2()
        })
        .sum();
    out.insert("Entropy".into(), entropy);
    for (k, &count) in bins.iter().enumerate() {
        out.insert(format!("Histogram_{k}"), count);
    }

    out.insert(
        "Interquartile range".into(),
        quantile_ref(&s, 0.75) - quantile_ref(&s, 0.25),
    );

    let mu = mean_of(x);
    let m2 = x.iter().map(|v| (v - mu).powi(2)).sum::<f64>() / nf;
    let m3 = x.iter().map(|v| (v - mu).powi(3)).sum::<f64>() / nf;
    let m4 = x.iter().map(|v| (v - mu).powi(4)).sum::<f64>() / nf;
    out.insert("Kurtosis".into(), if m2 == 0.0 { 0.0 } else { m4 / (m2 * m2) - 3.0 });
    out.insert("Skewness".into(), if m2 == 0.0 { 0.0 } else { m3 / m2.powf(1.5) });
    out.insert("Standard deviation".into(), m2.sqrt());
    out.insert("Variance".into(), m2);

    out.insert("Max".into(), max);
    out.insert("Min".into(), min);
    out.insert("Mean".into(), mu);
    out.insert("Peak to peak distance".into(), max - min);
    out.insert("Root mean square".into(), (energy / nf).sqrt());
    out.insert(
        "Mean absolute deviation".into(),
        x.iter().map(|v| (v - mu).abs()).sum::<f64>() / nf,
    );
    let median = quantile_ref(&s, 0.5);
    out.insert("Median".into(), median);
    let dev = ascending(&x.iter().map(|v| (v - median).abs()).collect::<Vec<_>>());
    out.insert("Median absolute deviation".into(), quantile_ref(&dev, 0.5));

    out
}

// ------------------------------------------------------------------ temporal

fn temporal_reference(x: &[f64], dt: f64) -> BTreeMap<String, f64> {
    let n = x.len();
    let nf = n as f64;
    let diffs: Vec<f64> = (1..n).map(|i| x[i] - x[i - 1]).collect();
    let mut out = BTreeMap::new();

    let auc: f64 = (1..n).map(|i| 0.5 * (x[i - 1] + x[i]) * dt).sum();
    out.insert("Area under the curve".into(), auc);

    let energy: f64 = x.iter().map(|v| v * v).sum();
    let lag1: f64 = (1..n).map(|i| x[i - 1] * x[i]).sum();
    out.insert("Autocorrelation".into(), if energy == 0.0 { 0.0 } else { lag1 / energy });

    let weighted: f64 = x.iter().enumerate().map(|(i, v)| i as f64 * dt * v * v).sum();
    out.insert("Centroid".into(), if energy == 0.0 { 0.0 } else { weighted / energy });

    let nd = diffs.len() as f64;
    out.insert("Mean diff".into(), diffs.iter().sum::<f64>() / nd);
    out.insert("Mean absolute diff".into(), diffs.iter().map(|d| d.abs()).sum::<f64>() / nd);
    out.insert("Median diff".into(), quantile_ref(&ascending(&diffs), 0.5));
    out.insert(
        "Median absolute diff".into(),
        quantile_ref(&ascending(&diffs.iter().map(|d| d.abs()).collect::<Vec<_>>()), 0.5),
    );

    let minima = (1..n - 1).filter(|&i| x[i - 1] > x[i] && x[i] < x[i + 1]).count();
    let maxima = (1..n - 1).filter(|&i| x[i - 1] < x[i] && x[i] > x[i + 1]).count();
    out.insert("Negative turning points".into(), minima as f64);
    out.insert("Positive turning points".into(), maxima as f64);

    // Samples strictly above the mean dominating every neighbor within
    // a 10-sample radius on each side (clipped at the edges).
    let mu = mean_of(x);
    let peaks = (0..n)
        .filter(|&i| {
            x[i] > mu && {
                let lo = i.saturating_sub(10);
                let hi = (i + 11).min(n);
                !(lo..hi).any(|j| j != i && x[j] >= x[i])
            }
        })
        .count();
    out.insert("Neighbourhood peaks".into(), peaks as f64);

    out.insert(
        "Signal distance".into(),
        diffs.iter().map(|d| (1.0 + d * d).sqrt()).sum(),
    );

    // OLS slope of x against t = i·dt.
    let t_mean = (nf - 1.0) * dt / 2.0;
    let num: f64 = x.iter().enumerate().map(|(i, v)| (i as f64 * dt - t_mean) * (v - mu)).sum();
    let den: f64 = (0..n).map(|i| (i as f64 * dt - t_mean).powi(2)).sum();
    out.insert("Slope".into(), if den == 0.0 { 0.0 } else { num / den });

    out.insert("Sum absolute diff".into(), diffs.iter().map(|d| d.abs()).sum());

    let mut crossings = 0usize;
    let mut prev = 0i32;
    for &v in x {
        let sign = if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            prev
        };
        if prev != 0 && sign != prev {
            crossings += 1;
        }
        prev = sign;
    }
    out.insert("Zero crossing rate".into(), crossings as f64);

    out
}

// ------------------------------------------------------------------ spectral

struct Spectrum {
    freqs: Vec<f64>,
    magnitude: Vec<f64>,
    raw_power: Vec<f64>,
    psd: Vec<f64>,
}

/// Direct O(n²) DFT: one-sided magnitudes, squared magnitudes, and the
/// periodogram PSD with interior bins doubled (Nyquist excluded for even n).
fn dft_spectrum(x: &[f64], fs: f64) -> Spectrum {
    let n = x.len();
    let k_len = n / 2 + 1;
    let mut freqs = Vec::with_capacity(k_len);
    let mut magnitude = Vec::with_capacity(k_len);
    let mut raw_power = Vec::with_capacity(k_len);
    let mut psd = Vec::with_capacity(k_len);
    for k in 0..k_len {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, &v) in x.iter().enumerate() {
            let angle = TAU * k as f64 * i as f64 / n as f64;
            re += v * angle.cos();
            im -= v * angle.sin();
        }
        let m = re.hypot(im);
        let doubled = k > 0 && !(n.is_multiple_of(2) && k == k_len - 1);
        freqs.push(k as f64 * fs / n as f64);
        magnitude.push(m);
        raw_power.push(m * m);
        psd.push(m * m / (fs * n as f64) * if doubled { 2.0 } else { 1.0 });
    }
    Spectrum { freqs, magnitude, raw_power, psd }
}

/// Smallest bin frequency where the running sum of `weights` reaches
/// `fraction` of the total; 0 for an all-zero weight vector.
fn threshold_freq(weights: &[f64], freqs: &[f64], fraction: f64) -> f64 {
    let total: f64 = weights.iter().sum();
    if total == 0.0 {
        return 0.0;
    }
    let mut acc = 0.0;
    for (i, w) in weights.iter().enumerate() {
        acc += w;
        if acc >= fraction * total {
            return freqs[i];
        }
    }
    freqs[freqs.len() - 1]
}

/// Order-11 linear prediction cepstra via a fresh Levinson-Durbin pass.
fn lpcc_reference(x: &[f64]) -> Vec<f64> {
    const ORDER: usize = 11;
    const CEPSTRA: usize = 12;
    let n = x.len();
    let r: Vec<f64> = (0..=ORDER)
        .map(|j| if j < n { (j..n).map(|i| x[i] * x[i - j]).sum() } else { 0.0 })
        .collect();
    if r[0] <= 0.0 {
        return vec![0.0; CEPSTRA];
    }
    let mut a = vec![0.0f64; ORDER + 1];
    a[0] = 1.0;
    let mut error = r[0];
    for i in 1..=ORDER {
        let acc: f64 = r[i] + (1..i).map(|j| a[j] * r[i - j]).sum::<f64>();
        let reflection = -acc / error;
        let previous = a.clone();
        for j in 1..i {
            a[j] = previous[j] + reflection * previous[i - j];
        }
        a[i] = reflection;
        error *= 1.0 - reflection * reflection;
        if !(error.is_finite() && error > 0.0) {
            return vec![0.0; CEPSTRA];
        }
    }
    // Predictor coefficients alpha_k = -a_k, then the cepstral recursion
    // c_m = alpha_m + sum_{j=1}^{m-1} (j/m) c_j alpha_{m-j}.
    let alpha = |k: usize| if (1..=ORDER).contains(&k) { -a[k] } else { 0.0 };
    let mut c = [0.0f64; CEPSTRA + 1];
    for m in 1..=CEPSTRA {
        c[m] = alpha(m)
            + (1..m).map(|j| (j as f64 / m as f64) * c[j] * alpha(m - j)).sum::<f64>();
    }
    let out: Vec<f64> = c[1..].to_vec();
    if out.iter().all(|v| v.is_finite()) {
        out
    } else {
        vec![0.0; CEPSTRA]
    }
}

fn mel_ref(f: f64) -> f64 {
    2595.0 * (1.0 + f / 700.0).log10()
}

fn mel_inverse_ref(m: f64) -> f64 {
    700.0 * (10.0f64.powf(m / 2595.0) - 1.0)
}

/// 12 MFCCs: 26 triangular mel filters over [0, fs/2], log energies with a
/// 1e-12 floor, orthonormal DCT-II, first 12 coefficients.
fn mfcc_reference(raw_power: &[f64], freqs: &[f64], nyquist: f64) -> Vec<f64> {
    const FILTERS: usize = 26;
    const CEPSTRA: usize = 12;
    if raw_power.iter().sum::<f64>() == 0.0 {
        return vec![0.0; CEPSTRA];
    }
    let top = mel_ref(nyquist);
    let edges: Vec<f64> =
        (0..FILTERS + 2).map(|i| mel_inverse_ref(top * i as f64 / (FILTERS + 1) as f64)).collect();
    let log_energies: Vec<f64> = (0..FILTERS)
        .map(|i| {
            let (lo, center, hi) = (edges[i], edges[i + 1], edges[i + 2]);
            let energy: f64 = freqs
                .iter()
                .zip(raw_power)
                .map(|(&f, &p)| {
                    let w = if f >= lo && f <= center && center > lo {
                        (f - lo) / (center - lo)
                    } else if f > center && f <= hi && hi > center {
                        (hi - f) / (hi - center)
                    } else {
                        0.0
                    };
                    w * p
                })
                .sum();
            (energy + 1e-12).ln()
        })
        .collect();
    (0..CEPSTRA)
        .map(|j| {
            let scale =
                if j == 0 { (1.0 / FILTERS as f64).sqrt() } else { (2.0 / FILTERS as f64).sqrt() };
            scale
                * log_energies
                    .iter()
                    .enumerate()
                    .map(|(i, e)| {
                        e * (std::f64::consts::PI * j as f64 * (2 * i + 1) as f64
                            / (2.0 * FILTERS as f64))
                            .cos()
                    })
                    .sum::<f64>()
        })
        .collect()
}

/// Ricker kernel at `width`, sampled on the 10·width + 1 integers around 0.
fn ricker_reference(width: usize) -> Vec<f64> {
    let w = width as f64;
    let amplitude = 2.0 / ((3.0 * w).sqrt() * std::f64::consts::PI.powf(0.25));
    let half = (10 * width) as isize / 2;
    (-half..=half)
        .map(|t| {
            let t = t as f64;
            let u = t / w;
            amplitude * (1.0 - u * u) * (-t * t / (2.0 * w * w)).exp()
        })
        .collect()
}

/// Same-length correlation of the series with a kernel, zero-padded edges.
fn correlate_reference(x: &[f64], kernel: &[f64]) -> Vec<f64> {
    let n = x.len() as isize;
    let half = (kernel.len() as isize - 1) / 2;
    (0..n)
        .map(|i| {
            let mut acc = 0.0;
            for (j, &w) in kernel.iter().enumerate() {
                let idx = i + j as isize - half;
                if idx >= 0 && idx < n {
                    acc += w * x[idx as usize];
                }
            }
            acc
        })
        .collect()
}

fn spectral_reference(x: &[f64], fs: f64) -> BTreeMap<String, f64> {
    let spectrum = dft_spectrum(x, fs);
    let Spectrum { freqs, magnitude, raw_power, psd } = &spectrum;
    let k = freqs.len();
    let kf = k as f64;
    let df = fs / x.len() as f64;
    let total_m: f64 = magnitude.iter().sum();
    let total_psd: f64 = psd.iter().sum();
    let mut out = BTreeMap::new();

    // Mean |DFT| within 10 equal bands of [0, fs/2].
    let band_width = fs / 2.0 / 10.0;
    let mut sums = [0.0f64; 10];
    let mut counts = [0usize; 10];
    for (f, m) in freqs.iter().zip(magnitude) {
        let band = ((f / band_width) as usize).min(9);
        sums[band] += m;
        counts[band] += 1;
    }
    for b in 0..10 {
        let value = if counts[b] == 0 { 0.0 } else { sums[b] / counts[b] as f64 };
        out.insert(format!("FFT mean coefficient_{b}"), value);
    }

    // Argmax of M excluding DC; bins at the FFT rounding floor are empty.
    let mut best = (0usize, 0.0f64);
    for (i, &m) in magnitude.iter().enumerate().take(k).skip(1) {
        if m > best.1 {
            best = (i, m);
        }
    }
    out.insert(
        "Fundamental frequency".into(),
        if best.1 > total_m * 1e-12 { freqs[best.0] } else { 0.0 },
    );

    let human: f64 = freqs
        .iter()
        .zip(psd)
        .filter(|(f, _)| (0.6..=2.5).contains(*f))
        .map(|(_, p)| p)
        .sum();
    out.insert(
        "Human range energy".into(),
        if total_psd == 0.0 { 0.0 } else { human / total_psd },
    );

    for (i, v) in lpcc_reference(x).into_iter().enumerate() {
        out.insert(format!("LPCC_{i}"), v);
    }
    for (i, v) in mfcc_reference(raw_power, freqs, fs / 2.0).into_iter().enumerate() {
        out.insert(format!("MFCC_{i}"), v);
    }

    out.insert("Max power spectrum".into(), psd.iter().copied().fold(0.0, f64::max));
    out.insert("Maximum frequency".into(), threshold_freq(magnitude, freqs, 0.95));
    out.insert("Median frequency".into(), threshold_freq(psd, freqs, 0.50));

    // Contiguous half-power band around the PSD peak.
    let mut peak = (0usize, 0.0f64);
    for (i, &p) in psd.iter().enumerate() {
        if p > peak.1 {
            peak = (i, p);
        }
    }
    let bandwidth = if peak.1 == 0.0 {
        0.0
    } else {
        let half = peak.1 / 2.0;
        let mut lo = peak.0;
        while lo > 0 && psd[lo - 1] >= half {
            lo -= 1;
        }
        let mut hi = peak.0;
        while hi + 1 < k && psd[hi + 1] >= half {
            hi += 1;
        }
        (hi - lo) as f64 * df
    };
    out.insert("Power bandwidth".into(), bandwidth);

    let centroid = if total_m == 0.0 {
        0.0
    } else {
        freqs.iter().zip(magnitude).map(|(f, m)| f * m).sum::<f64>() / total_m
    };
    out.insert("Spectral centroid".into(), centroid);

    let dec_den: f64 = magnitude[1..].iter().sum();
    let dec_num: f64 =
        (1..k).map(|i| (magnitude[i] - magnitude[0]) / i as f64).sum();
    out.insert("Spectral decrease".into(), if dec_den == 0.0 { 0.0 } else { dec_num / dec_den });

    // Gap between the cumulative spectrum and its straight-line ramp.
    let cumulative: Vec<f64> = magnitude
        .iter()
        .scan(0.0, |acc, m| {
            *acc += m;
            Some(*acc)
        })
        .collect();
    let distance = if k < 2 {
        0.0
    } else {
        let last = cumulative[k - 1];
        cumulative
            .iter()
            .enumerate()
            .map(|(i, c)| last * i as f64 / (k - 1) as f64 - c)
            .sum()
    };
    out.insert("Spectral distance".into(), distance);

    let entropy = if total_psd == 0.0 || k < 2 {
        0.0
    } else {
        psd.iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| {
                let q = p / total_psd;
                -q * q.log2()
            })
            .sum::<f64>()
            / kf.log2()
    };
    out.insert("Spectral entropy".into(), entropy);

    let spread = if total_m == 0.0 {
        0.0
    } else {
        (freqs.iter().zip(magnitude).map(|(f, m)| (f - centroid).powi(2) * m).sum::<f64>()
            / total_m)
            .sqrt()
    };
    out.insert("Spectral spread".into(), spread);
    let moment = |power: i32| {
        if total_m == 0.0 || spread == 0.0 {
            0.0
        } else {
            freqs.iter().zip(magnitude).map(|(f, m)| (f - centroid).powi(power) * m).sum::<f64>()
                / (total_m * spread.powi(power))
        }
    };
    out.insert("Spectral kurtosis".into(), moment(4));
    out.insert("Spectral skewness".into(), moment(3));

    let turns = (1..k.saturating_sub(1))
        .filter(|&i| magnitude[i - 1] < magnitude[i] && magnitude[i] > magnitude[i + 1])
        .count();
    out.insert("Spectral positive turning points".into(), turns as f64);

    out.insert("Spectral roll-off".into(), threshold_freq(raw_power, freqs, 0.95));
    out.insert("Spectral roll-on".into(), threshold_freq(raw_power, freqs, 0.05));

    let f_mean = freqs.iter().sum::<f64>() / kf;
    let m_mean = total_m / kf;
    let num: f64 = freqs.iter().zip(magnitude).map(|(f, m)| (f - f_mean) * (m - m_mean)).sum();
    let den: f64 = freqs.iter().map(|f| (f - f_mean) * (f - f_mean)).sum();
    out.insert("Spectral slope".into(), if den == 0.0 { 0.0 } else { num / den });

    let head = &magnitude[..k - 1];
    let tail = &magnitude[1..];
    let dot: f64 = head.iter().zip(tail).map(|(a, b)| a * b).sum();
    let na = head.iter().map(|a| a * a).sum::<f64>().sqrt();
    let nb = tail.iter().map(|b| b * b).sum::<f64>().sqrt();
    out.insert(
        "Spectral variation".into(),
        if na == 0.0 || nb == 0.0 { 0.0 } else { 1.0 - dot / (na * nb) },
    );

    let mut squared_sums = Vec::with_capacity(9);
    for (slot, width) in (1..=9).enumerate() {
        let coefficients = correlate_reference(x, &ricker_reference(width));
        let nf = coefficients.len() as f64;
        let sum_sq: f64 = coefficients.iter().map(|c| c * c).sum();
        let mu = mean_of(&coefficients);
        let variance = coefficients.iter().map(|c| (c - mu).powi(2)).sum::<f64>() / nf;
        out.insert(
            format!("Wavelet absolute mean_{slot}"),
            coefficients.iter().map(|c| c.abs()).sum::<f64>() / nf,
        );
        out.insert(format!("Wavelet energy_{slot}"), (sum_sq / nf).sqrt());
        out.insert(format!("Wavelet standard deviation_{slot}"), variance.sqrt());
        out.insert(format!("Wavelet variance_{slot}"), variance);
        squared_sums.push(sum_sq);
    }
    let total_wavelet: f64 = squared_sums.iter().sum();
    let wavelet_entropy = if total_wavelet == 0.0 {
        0.0
    } else {
        squared_sums
            .iter()
            .filter(|&&e| e > 0.0)
            .map(|&e| {
                let p = e / total_wavelet;
                -p * p.log2()
            })
            .sum()
    };
    out.insert("Wavelet entropy".into(), wavelet_entropy);

    out
}

// ---------------------------------------------------------------- comparison

fn check_category(
    label: &str,
    names: &[String],
    values: &[f64],
    reference: &BTreeMap<String, f64>,
    rel: f64,
    abs_floor: f64,
) {
    assert_eq!(names.len(), values.len(), "{label}: name/value arity");
    let emitted: BTreeSet<&String> = names.iter().collect();
    let expected: BTreeSet<&String> = reference.keys().collect();
    assert_eq!(emitted, expected, "{label}: scalar name sets differ");
    for (name, &value) in names.iter().zip(values) {
        let expect = reference[name];
        let tol = abs_floor + rel * value.abs().max(expect.abs());
        assert!(
            (value - expect).abs() <= tol,
            "{label}: {name}: library {value} vs reference {expect}"
        );
    }
}

fn check_series(x: &[f64], label: &str) {
    check_category(
        label,
        &scalar_names(Category::Statistical),
        &compute_statistical(x, DT).unwrap(),
        &statistical_reference(x, DT),
        1e-9,
        1e-12,
    );
    check_category(
        label,
        &scalar_names(Category::Temporal),
        &compute_temporal(x, DT).unwrap(),
        &temporal_reference(x, DT),
        1e-9,
        1e-12,
    );
    check_category(
        label,
        &scalar_names(Category::Spectral),
        &compute_spectral(x, FS).unwrap(),
        &spectral_reference(x, FS),
        1e-6,
        1e-9,
    );
}

/// The full randomized comparison: 100 seeded random series, every scalar
/// in every category checked against its reference, plus the all-zero
/// series, which exercises every zero-denominator convention (both paths
/// produce exact zeros, so the comparison stays meaningful).
pub fn run_randomized_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xFEA7);
    for i in 0..100 {
        let x = random_series(&mut rng);
        check_series(&x, &format!("series {i}"));
    }
    check_series(&vec![0.0; N], "all-zero series");
}

