//! Derivative stack and windowing.
//!
//! Each labeled segment's six channels are differentiated into a four-order
//! stack — movement (the raw series), velocity, acceleration, jerk — and the
//! aligned stack is sliced into fixed-length windows. Derivatives use central
//! differences in the interior and one-sided differences at the endpoints, so
//! every order keeps the full segment length.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{SegmentLabel, N_CHANNELS};

/// Number of derivative orders in a stack.
pub const N_ORDERS: usize = 4;

#[derive(Debug, Error)]
pub enum KinematicsError {
    #[error("series too short: {n} samples, need at least {min}")]
    SeriesTooShort { n: usize, min: usize },
    #[error("window length {window_len_s} s is not a whole number of samples at {rate_hz} Hz")]
    NonIntegralWindow { window_len_s: f64, rate_hz: f64 },
    #[error("window of {samples} samples is too short, need at least {min}")]
    WindowTooShort { samples: usize, min: usize },
}

/// Derivative order of a channel series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Order {
    Movement,
    Velocity,
    Acceleration,
    Jerk,
}

impl Order {
    pub const ALL: [Order; N_ORDERS] =
        [Order::Movement, Order::Velocity, Order::Acceleration, Order::Jerk];

    /// Lowercase name used as the first token of feature names.
    pub fn name(self) -> &'static str {
        match self {
            Order::Movement => "movement",
            Order::Velocity => "velocity",
            Order::Acceleration => "acceleration",
            Order::Jerk => "jerk",
        }
    }
}

/// Motion channel of a recording.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Channel {
    X,
    Y,
    Z,
    Pitch,
    Roll,
    Yaw,
}

impl Channel {
    pub const ALL: [Channel; N_CHANNELS] =
        [Channel::X, Channel::Y, Channel::Z, Channel::Pitch, Channel::Roll, Channel::Yaw];

    /// Canonical channel name used as the second token of feature names.
    pub fn name(self) -> &'static str {
        match self {
            Channel::X => "X",
            Channel::Y => "Y",
            Channel::Z => "Z",
            Channel::Pitch => "Pitch",
            Channel::Roll => "Roll",
            Channel::Yaw => "Yaw",
        }
    }
}

/// Numerically differentiates a uniformly sampled series.
///
/// Interior points use the central difference `(x[i+1] - x[i-1]) / (2 dt)`;
/// the endpoints use one-sided differences over their adjacent interval. The
/// output always has the same length as the input.
pub fn differentiate(series: &[f64], dt_s: f64) -> Result<Vec<f64>, KinematicsError> {
    let n = series.len();
    if n < 3 {
        return Err(KinematicsError::SeriesTooShort { n, min: 3 });
    }
    let mut out = Vec::with_capacity(n);
    out.push((series[1] - series[0]) / dt_s);
    for i in 1..n - 1 {
        out.push((series[i + 1] - series[i - 1]) / (2.0 * dt_s));
    }
    out.push((series[n - 1] - series[n - 2]) / dt_s);
    Ok(out)
}

/// The four derivative orders of all six channels of one segment, aligned
/// sample-for-sample.
#[derive(Debug, Clone, PartialEq)]
pub struct KinematicStack {
    /// `series[order][channel]` in the order of [`Order::ALL`] / [`Channel::ALL`].
    pub series: [[Vec<f64>; N_CHANNELS]; N_ORDERS],
    pub sample_rate_hz: f64,
}

impl KinematicStack {
    pub fn n_samples(&self) -> usize {
        self.series[0][0].len()
    }

    pub fn get(&self, order: Order, channel: Channel) -> &[f64] {
        &self.series[order as usize][channel as usize]
    }
}

/// Builds the derivative stack from one segment's channel series.
///
/// Each order is the derivative of the previous one; movement is the input
/// itself. Requires at least 4 samples so every order retains signal.
pub fn build_stack(
    channels: &[Vec<f64>; N_CHANNELS],
    sample_rate_hz: f64,
) -> Result<KinematicStack, KinematicsError> {
    let n = channels[0].len();
    if n < 4 {
        return Err(KinematicsError::SeriesTooShort { n, min: 4 });
    }
    let dt = 1.0 / sample_rate_hz;
    let mut series: [[Vec<f64>; N_CHANNELS]; N_ORDERS] = Default::default();
    for (c, movement) in channels.iter().enumerate() {
        let velocity = differentiate(movement, dt)?;
        let acceleration = differentiate(&velocity, dt)?;
        let jerk = differentiate(&acceleration, dt)?;
        series[0][c] = movement.clone();
        series[1][c] = velocity;
        series[2][c] = acceleration;
        series[3][c] = jerk;
    }
    Ok(KinematicStack { series, sample_rate_hz })
}

/// One fixed-length window cut from a segment's stack.
///
/// Carries all four orders of all six channels plus the provenance needed
/// downstream: the segment's participant and label (inherited unchanged) and
/// the window's position within the segment.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowInstance {
    pub participant_id: String,
    pub label: SegmentLabel,
    /// Position of the window within its segment (0, 1, 2, ...).
    pub window_index: usize,
    /// First sample of the window, in segment coordinates.
    pub start: usize,
    /// `samples[order][channel]`, each of the window's length.
    pub samples: [[Vec<f64>; N_CHANNELS]; N_ORDERS],
    pub sample_rate_hz: f64,
}

impl WindowInstance {
    pub fn len(&self) -> usize {
        self.samples[0][0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples[0][0].is_empty()
    }

    pub fn get(&self, order: Order, channel: Channel) -> &[f64] {
        &self.samples[order as usize][channel as usize]
    }
}

/// Slices a stack into windows of `window_len_s` seconds every `stride_s`
/// seconds.
///
/// Window starts are `0, S, 2S, ...`; a trailing span shorter than the window
/// is dropped, never padded, so a stack shorter than one window yields no
/// windows. Both durations must be whole numbers of samples.
pub fn window_stack(
    stack: &KinematicStack,
    participant_id: &str,
    label: SegmentLabel,
    window_len_s: f64,
    stride_s: f64,
) -> Result<Vec<WindowInstance>, KinematicsError> {
    let window = span_samples(window_len_s, stack.sample_rate_hz)?;
    let stride = span_samples(stride_s, stack.sample_rate_hz)?;
    if window < 4 {
        return Err(KinematicsError::WindowTooShort { samples: window, min: 4 });
    }

    let n = stack.n_samples();
    let mut windows = Vec::new();
    let mut start = 0;
    while start + window <= n {
        let samples = std::array::from_fn(|o| {
            std::array::from_fn(|c| stack.series[o][c][start..start + window].to_vec())
        });
        windows.push(WindowInstance {
            participant_id: participant_id.to_string(),
            label,
            window_index: windows.len(),
            start,
            samples,
            sample_rate_hz: stack.sample_rate_hz,
        });
        start += stride;
    }
    Ok(windows)
}

fn span_samples(duration_s: f64, rate_hz: f64) -> Result<usize, KinematicsError> {
    let exact = duration_s * rate_hz;
    let rounded = exact.round();
    if !(exact.is_finite() && rounded >= 1.0 && (exact - rounded).abs() < 1e-9) {
        return Err(KinematicsError::NonIntegralWindow {
            window_len_s: duration_s,
            rate_hz,
        });
    }
    Ok(rounded as usize)
}
