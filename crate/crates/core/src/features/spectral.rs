//! Spectral descriptors: DFT magnitude spectrum, periodogram, and Ricker
//! wavelet statistics of one series.
//!
//! Three intermediate representations feed the descriptors:
//! - `M(f)`: one-sided magnitude spectrum of the un-windowed (rectangular)
//!   DFT, not doubled;
//! - PSD: the periodogram `|X|² / (fs·N)` with interior bins doubled;
//! - CWT: continuous wavelet transform with Ricker kernels at widths 1..9.
//!
//! Every quotient has an explicit zero-denominator convention returning 0 so
//! all-zero and constant windows still produce finite vectors.

use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

/// Number of scalars the spectral category emits per series.
pub(crate) const N_SCALARS: usize = 89;

/// Mel filterbank size used by MFCC.
const N_MEL_FILTERS: usize = 26;

/// Cepstral coefficients emitted by LPCC and MFCC.
const N_CEPSTRA: usize = 12;

/// Linear prediction order behind LPCC.
const LPC_ORDER: usize = 11;

/// Ricker wavelet widths.
const WAVELET_WIDTHS: std::ops::RangeInclusive<usize> = 1..=9;

/// Additive floor inside MFCC's log to keep filter energies finite.
const LOG_FLOOR: f64 = 1e-12;

/// Precomputed machinery for series of one fixed length and sample rate:
/// the FFT plan, one-sided bin frequencies, mel filterbank, and Ricker
/// kernels. Immutable after construction and shareable across threads.
pub(crate) struct SpectralContext {
    n: usize,
    sample_rate_hz: f64,
    fft: Arc<dyn Fft<f64>>,
    /// One-sided bin frequencies `k · fs / n`, length `K`.
    freqs: Vec<f64>,
    /// `N_MEL_FILTERS` rows of triangular weights over the `K` bins.
    mel_filters: Vec<Vec<f64>>,
    /// Ricker kernels for widths 1..9, each of length `10·width + 1`.
    ricker: Vec<Vec<f64>>,
}

impl SpectralContext {
    pub(crate) fn new(n: usize, sample_rate_hz: f64) -> Self {
        let freqs = bin_frequencies(n, sample_rate_hz);
        Self {
            n,
            sample_rate_hz,
            fft: FftPlanner::new().plan_fft_forward(n),
            mel_filters: mel_filterbank(&freqs, sample_rate_hz / 2.0),
            ricker: WAVELET_WIDTHS.map(ricker_kernel).collect(),
            freqs,
        }
    }

    pub(crate) fn n_samples(&self) -> usize {
        self.n
    }
}

fn one_sided_len(n: usize) -> usize {
    n / 2 + 1
}

/// One-sided bin frequencies `k · fs / n` for `k in 0..n/2+1`.
fn bin_frequencies(n: usize, sample_rate_hz: f64) -> Vec<f64> {
    (0..one_sided_len(n)).map(|i| i as f64 * sample_rate_hz / n as f64).collect()
}

/// One-sided magnitude spectrum `|X_k|` of `x` under the given FFT plan.
fn one_sided_magnitude(x: &[f64], fft: &dyn Fft<f64>) -> Vec<f64> {
    let mut buffer: Vec<Complex<f64>> = x.iter().map(|&v| Complex::new(v, 0.0)).collect();
    fft.process(&mut buffer);
    buffer[..one_sided_len(x.len())].iter().map(|c| c.norm()).collect()
}

/// PSD bins from squared magnitudes: `|X_k|² / (fs·n)`, doubled for every
/// bin except DC and, for even `n`, the Nyquist bin.
fn psd_bins(raw_power: &[f64], n: usize, sample_rate_hz: f64) -> Vec<f64> {
    let k = raw_power.len();
    raw_power
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let doubled = i > 0 && !(n.is_multiple_of(2) && i == k - 1);
            p / (sample_rate_hz * n as f64) * if doubled { 2.0 } else { 1.0 }
        })
        .collect()
}

/// One-sided power spectral density of `x` as `(bin frequencies, psd)`.
///
/// The one-sided view preserves power: `sum(psd) · fs / n` equals the mean
/// square of the series up to FFT rounding (Parseval). `x` must be
/// non-empty.
pub(crate) fn power_spectral_density(x: &[f64], sample_rate_hz: f64) -> (Vec<f64>, Vec<f64>) {
    let fft = FftPlanner::new().plan_fft_forward(x.len());
    let magnitude = one_sided_magnitude(x, fft.as_ref());
    let raw_power: Vec<f64> = magnitude.iter().map(|m| m * m).collect();
    let psd = psd_bins(&raw_power, x.len(), sample_rate_hz);
    (bin_frequencies(x.len(), sample_rate_hz), psd)
}

/// Appends all 26 spectral descriptors (89 scalars) in registry order.
///
/// Panics if `x.len()` differs from the context's length (caller contract).
pub(crate) fn compute(x: &[f64], ctx: &SpectralContext, out: &mut Vec<f64>) {
    assert_eq!(x.len(), ctx.n, "series length does not match spectral context");
    let n = ctx.n;
    let k = ctx.freqs.len();
    let df = ctx.sample_rate_hz / n as f64;

    // One-sided magnitude spectrum and the two power views derived from it.
    let magnitude = one_sided_magnitude(x, ctx.fft.as_ref());
    let raw_power: Vec<f64> = magnitude.iter().map(|m| m * m).collect();
    let psd = psd_bins(&raw_power, n, ctx.sample_rate_hz);

    let total_magnitude: f64 = magnitude.iter().sum();
    let total_psd: f64 = psd.iter().sum();

    // FFT mean coefficient: mean of |DFT| within 10 equal bands of [0, fs/2].
    let band_width = ctx.sample_rate_hz / 2.0 / 10.0;
    let mut band_sums = [0.0f64; 10];
    let mut band_counts = [0usize; 10];
    for (f, m) in ctx.freqs.iter().zip(&magnitude) {
        let band = ((f / band_width) as usize).min(9);
        band_sums[band] += m;
        band_counts[band] += 1;
    }
    for (sum, count) in band_sums.iter().zip(band_counts) {
        out.push(if count == 0 { 0.0 } else { sum / count as f64 });
    }

    // Fundamental frequency: argmax of M excluding DC, ties toward lower f.
    // Bins at the FFT rounding floor (a constant series leaves ~1e-13 of
    // residue spread over the spectrum) count as empty, not as a peak.
    let fundamental = magnitude
        .iter()
        .enumerate()
        .skip(1)
        .fold((0usize, 0.0f64), |best, (i, &m)| if m > best.1 { (i, m) } else { best });
    out.push(if fundamental.1 > total_magnitude * 1e-12 {
        ctx.freqs[fundamental.0]
    } else {
        0.0
    });

    // Human range energy: PSD fraction inside [0.6, 2.5] Hz.
    let human: f64 = ctx
        .freqs
        .iter()
        .zip(&psd)
        .filter(|(f, _)| (0.6..=2.5).contains(*f))
        .map(|(_, p)| p)
        .sum();
    out.push(if total_psd == 0.0 { 0.0 } else { human / total_psd });

    out.extend(lpcc(x));
    out.extend(mfcc(&raw_power, &ctx.mel_filters));

    out.push(psd.iter().copied().fold(0.0, f64::max));

    // Maximum frequency: smallest f where cumulative M reaches 95% of total.
    out.push(cumulative_threshold(&magnitude, &ctx.freqs, 0.95));
    // Median frequency: smallest f where cumulative PSD reaches 50%.
    out.push(cumulative_threshold(&psd, &ctx.freqs, 0.50));

    out.push(power_bandwidth(&psd, df));

    let centroid = if total_magnitude == 0.0 {
        0.0
    } else {
        ctx.freqs.iter().zip(&magnitude).map(|(f, m)| f * m).sum::<f64>() / total_magnitude
    };
    out.push(centroid);

    // Spectral decrease: average slope of M relative to the DC bin.
    let decrease_den: f64 = magnitude[1..].iter().sum();
    let decrease_num: f64 = magnitude[1..]
        .iter()
        .enumerate()
        .map(|(i, m)| (m - magnitude[0]) / (i + 1) as f64)
        .sum();
    out.push(if decrease_den == 0.0 { 0.0 } else { decrease_num / decrease_den });

    // Spectral distance: gap between the cumulative spectrum and the straight
    // line from 0 to its final value.
    let mut cumulative = Vec::with_capacity(k);
    let mut acc = 0.0;
    for m in &magnitude {
        acc += m;
        cumulative.push(acc);
    }
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
    out.push(distance);

    // Spectral entropy: Shannon entropy of the normalized PSD, scaled into
    // [0, 1] by the log of the bin count.
    let entropy = if total_psd == 0.0 || k < 2 {
        0.0
    } else {
        let h: f64 = psd
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| {
                let q = p / total_psd;
                -q * q.log2()
            })
            .sum();
        h / (k as f64).log2()
    };
    out.push(entropy);

    // Moment descriptors treat M as a weight distribution over frequency.
    let spread = if total_magnitude == 0.0 {
        0.0
    } else {
        (ctx.freqs
            .iter()
            .zip(&magnitude)
            .map(|(f, m)| (f - centroid).powi(2) * m)
            .sum::<f64>()
            / total_magnitude)
            .sqrt()
    };
    let frequency_moment = |power: i32| -> f64 {
        if total_magnitude == 0.0 || spread == 0.0 {
            return 0.0;
        }
        ctx.freqs
            .iter()
            .zip(&magnitude)
            .map(|(f, m)| (f - centroid).powi(power) * m)
            .sum::<f64>()
            / (total_magnitude * spread.powi(power))
    };
    out.push(frequency_moment(4)); // kurtosis (not excess)

    let turning_points = magnitude
        .windows(3)
        .filter(|w| w[0] < w[1] && w[1] > w[2])
        .count() as f64;
    out.push(turning_points);

    // Roll-off / roll-on: 95% / 5% thresholds of the squared-magnitude energy.
    out.push(cumulative_threshold(&raw_power, &ctx.freqs, 0.95));
    out.push(cumulative_threshold(&raw_power, &ctx.freqs, 0.05));

    out.push(frequency_moment(3)); // skewness

    // Spectral slope: OLS slope of M against f.
    let f_mean = ctx.freqs.iter().sum::<f64>() / k as f64;
    let m_mean = total_magnitude / k as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for (f, m) in ctx.freqs.iter().zip(&magnitude) {
        num += (f - f_mean) * (m - m_mean);
        den += (f - f_mean) * (f - f_mean);
    }
    out.push(if den == 0.0 { 0.0 } else { num / den });

    out.push(spread);

    // Spectral variation: 1 − correlation between adjacent-bin magnitudes.
    let variation = {
        let head = &magnitude[..k - 1];
        let tail = &magnitude[1..];
        let dot: f64 = head.iter().zip(tail).map(|(a, b)| a * b).sum();
        let na: f64 = head.iter().map(|a| a * a).sum::<f64>().sqrt();
        let nb: f64 = tail.iter().map(|b| b * b).sum::<f64>().sqrt();
        if na == 0.0 || nb == 0.0 {
            0.0
        } else {
            1.0 - dot / (na * nb)
        }
    };
    out.push(variation);

    // Wavelet statistics per width, then the width-energy entropy.
    let n_widths = ctx.ricker.len();
    let mut abs_means = Vec::with_capacity(n_widths);
    let mut energies = Vec::with_capacity(n_widths);
    let mut stds = Vec::with_capacity(n_widths);
    let mut vars = Vec::with_capacity(n_widths);
    let mut squared_sums = Vec::with_capacity(n_widths);
    for kernel in &ctx.ricker {
        let coefficients = cwt_row(x, kernel);
        let nf = coefficients.len() as f64;
        let sum_sq: f64 = coefficients.iter().map(|c| c * c).sum();
        let mean = coefficients.iter().sum::<f64>() / nf;
        let variance =
            coefficients.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / nf;
        abs_means.push(coefficients.iter().map(|c| c.abs()).sum::<f64>() / nf);
        energies.push((sum_sq / nf).sqrt());
        stds.push(variance.sqrt());
        vars.push(variance);
        squared_sums.push(sum_sq);
    }
    out.extend(&abs_means);
    out.extend(&energies);

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
    out.push(wavelet_entropy);

    out.extend(&stds);
    out.extend(&vars);
}

/// Smallest bin frequency at which the cumulative sum of `weights` reaches
/// `fraction` of its total; 0 when the total is 0.
fn cumulative_threshold(weights: &[f64], freqs: &[f64], fraction: f64) -> f64 {
    let total: f64 = weights.iter().sum();
    if total == 0.0 {
        return 0.0;
    }
    let target = fraction * total;
    let mut acc = 0.0;
    for (w, f) in weights.iter().zip(freqs) {
        acc += w;
        if acc >= target {
            return *f;
        }
    }
    freqs[freqs.len() - 1]
}

/// Width of the contiguous half-power band around the PSD peak.
fn power_bandwidth(psd: &[f64], df: f64) -> f64 {
    let peak = psd
        .iter()
        .enumerate()
        .fold((0usize, 0.0f64), |best, (i, &p)| if p > best.1 { (i, p) } else { best });
    if peak.1 == 0.0 {
        return 0.0;
    }
    let half = peak.1 / 2.0;
    let mut left = peak.0;
    while left > 0 && psd[left - 1] >= half {
        left -= 1;
    }
    let mut right = peak.0;
    while right + 1 < psd.len() && psd[right + 1] >= half {
        right += 1;
    }
    (right - left) as f64 * df
}

/// 12 linear-prediction cepstral coefficients (order 11).
///
/// The biased autocorrelation feeds the Levinson-Durbin recursion; the
/// prediction coefficients then convert to cepstra by the standard recursion.
/// A degenerate series (zero energy, or a recursion that loses positive
/// prediction error) yields all zeros.
fn lpcc(x: &[f64]) -> [f64; N_CEPSTRA] {
    let n = x.len();
    let mut r = [0.0f64; LPC_ORDER + 1];
    for (j, rj) in r.iter_mut().enumerate() {
        if j < n {
            *rj = (0..n - j).map(|i| x[i] * x[i + j]).sum();
        }
    }
    if r[0] <= 0.0 {
        return [0.0; N_CEPSTRA];
    }

    let mut a = [0.0f64; LPC_ORDER + 1];
    a[0] = 1.0;
    let mut error = r[0];
    for i in 1..=LPC_ORDER {
        let mut acc = r[i];
        for j in 1..i {
            acc += a[j] * r[i - j];
        }
        let reflection = -acc / error;
        let previous = a;
        for j in 1..i {
            a[j] = previous[j] + reflection * previous[i - j];
        }
        a[i] = reflection;
        error *= 1.0 - reflection * reflection;
        if !(error.is_finite() && error > 0.0) {
            return [0.0; N_CEPSTRA];
        }
    }

    // Predictor form x[t] ≈ Σ alpha[k]·x[t−k] has alpha = −a.
    let alpha: Vec<f64> = (1..=LPC_ORDER).map(|j| -a[j]).collect();
    let mut c = [0.0f64; N_CEPSTRA + 1];
    for m in 1..=N_CEPSTRA {
        let mut value = if m <= LPC_ORDER { alpha[m - 1] } else { 0.0 };
        let low = m.saturating_sub(LPC_ORDER).max(1);
        for j in low..m {
            value += (j as f64 / m as f64) * c[j] * alpha[m - j - 1];
        }
        c[m] = value;
    }
    let out: [f64; N_CEPSTRA] = std::array::from_fn(|i| c[i + 1]);
    if out.iter().all(|v| v.is_finite()) {
        out
    } else {
        [0.0; N_CEPSTRA]
    }
}

/// 12 mel-frequency cepstral coefficients from the one-sided power spectrum.
fn mfcc(raw_power: &[f64], filters: &[Vec<f64>]) -> [f64; N_CEPSTRA] {
    if raw_power.iter().sum::<f64>() == 0.0 {
        return [0.0; N_CEPSTRA];
    }
    let log_energies: Vec<f64> = filters
        .iter()
        .map(|weights| {
            let energy: f64 = weights.iter().zip(raw_power).map(|(w, p)| w * p).sum();
            (energy + LOG_FLOOR).ln()
        })
        .collect();
    // Orthonormal DCT-II of the filter log-energies; keep the first 12.
    let nf = N_MEL_FILTERS as f64;
    std::array::from_fn(|j| {
        let scale = if j == 0 { (1.0 / nf).sqrt() } else { (2.0 / nf).sqrt() };
        scale
            * log_energies
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    e * (std::f64::consts::PI * j as f64 * (2 * i + 1) as f64 / (2.0 * nf)).cos()
                })
                .sum::<f64>()
    })
}

fn mel(f: f64) -> f64 {
    2595.0 * (1.0 + f / 700.0).log10()
}

fn mel_inverse(m: f64) -> f64 {
    700.0 * (10.0f64.powf(m / 2595.0) - 1.0)
}

/// Triangular mel filterbank over the one-sided bin frequencies, with
/// `N_MEL_FILTERS + 2` mel-equidistant edge points spanning [0, nyquist].
fn mel_filterbank(freqs: &[f64], nyquist_hz: f64) -> Vec<Vec<f64>> {
    let top = mel(nyquist_hz);
    let points: Vec<f64> = (0..N_MEL_FILTERS + 2)
        .map(|i| mel_inverse(top * i as f64 / (N_MEL_FILTERS + 1) as f64))
        .collect();
    (0..N_MEL_FILTERS)
        .map(|i| {
            let (lo, center, hi) = (points[i], points[i + 1], points[i + 2]);
            freqs
                .iter()
                .map(|&f| {
                    if f >= lo && f <= center && center > lo {
                        (f - lo) / (center - lo)
                    } else if f > center && f <= hi && hi > center {
                        (hi - f) / (hi - center)
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect()
}

/// Ricker (Mexican-hat) kernel of the given width, sampled at the
/// `10·width + 1` integers centered on zero.
fn ricker_kernel(width: usize) -> Vec<f64> {
    let w = width as f64;
    let amplitude = 2.0 / ((3.0 * w).sqrt() * std::f64::consts::PI.powf(0.25));
    let len = 10 * width + 1;
    let half = (len as isize - 1) / 2;
    (0..len)
        .map(|j| {
            let t = (j as isize - half) as f64;
            let u = t / w;
            amplitude * (1.0 - u * u) * (-t * t / (2.0 * w * w)).exp()
        })
        .collect()
}

/// Correlation of the series with one kernel, output aligned to the input
/// (same length) with zero padding beyond the edges.
fn cwt_row(x: &[f64], kernel: &[f64]) -> Vec<f64> {
    let n = x.len() as isize;
    let half = (kernel.len() as isize - 1) / 2;
    (0..n)
        .map(|i| {
            kernel
                .iter()
                .enumerate()
                .map(|(j, &w)| {
                    let idx = i + j as isize - half;
                    if (0..n).contains(&idx) {
                        w * x[idx as usize]
                    } else {
                        0.0
                    }
                })
                .sum()
        })
        .collect()
}
