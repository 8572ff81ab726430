//! Deterministic synthetic corpora for smoke tests and demos.
//!
//! Well participants move with smooth low-frequency baselines throughout.
//! Sick participants share that baseline early, but over the trailing
//! "sick phase" their channels mix in gated high-frequency bursts and a
//! shifted dominant frequency — abrupt, jerk-heavy dynamics that a working
//! pipeline should separate from the early calm without any real data.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::corpus::{Corpus, MotionRecording, Outcome, N_CHANNELS};

/// Shape of a generated corpus. Participants alternate well/sick starting
/// with well, so any size of at least two contains both outcomes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthesisConfig {
    pub n_participants: usize,
    pub duration_s: f64,
    pub sample_rate_hz: f64,
    /// Trailing span over which sick participants' dynamics change.
    pub sick_phase_s: f64,
    pub seed: u64,
}

impl Default for SynthesisConfig {
    fn default() -> Self {
        Self {
            n_participants: 12,
            duration_s: 30.0,
            sample_rate_hz: 60.0,
            sick_phase_s: 10.0,
            seed: 7,
        }
    }
}

/// Generates a corpus. Byte-identical for identical configurations: each
/// participant derives an own generator from the master seed, so growing
/// the corpus never changes already-generated participants.
pub fn synthesize_corpus(cfg: &SynthesisConfig) -> Result<Corpus, HarnessError> {
    if cfg.n_participants < 2 {
        return Err(HarnessError::InvalidConfig(
            "need at least 2 participants for both outcomes".into(),
        ));
    }
    let timing_ok = cfg.sample_rate_hz > 0.0 && cfg.duration_s > 0.0;
    if !timing_ok {
        return Err(HarnessError::InvalidConfig(
            "sample rate and duration must be positive".into(),
        ));
    }
    let phase_ok = cfg.sick_phase_s > 0.0 && cfg.sick_phase_s <= cfg.duration_s;
    if !phase_ok {
        return Err(HarnessError::InvalidConfig(format!(
            "sick phase ({} s) must be positive and fit the duration ({} s)",
            cfg.sick_phase_s, cfg.duration_s
        )));
    }

    let mut master = ChaCha8Rng::seed_from_u64(cfg.seed);
    let recordings = (0..cfg.n_participants)
        .map(|index| {
            let participant_seed: u64 = master.gen();
            make_recording(index, participant_seed, cfg)
        })
        .collect();
    Ok(Corpus { recordings })
}

fn make_recording(index: usize, seed: u64, cfg: &SynthesisConfig) -> MotionRecording {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let outcome = if index.is_multiple_of(2) { Outcome::Well } else { Outcome::Sick };
    let n = (cfg.duration_s * cfg.sample_rate_hz).round() as usize;
    let sick_start_s = cfg.duration_s - cfg.sick_phase_s;

    // How strongly this participant expresses the sick-phase dynamics.
    let severity = 0.7 + rng.gen::<f64>() * 0.6;

    let channels: [Vec<f64>; N_CHANNELS] = std::array::from_fn(|c| {
        // Positions (X, Y, Z) sway by a couple of centimetres; rotations
        // (pitch, roll, yaw) by a few degrees.
        let (base_lo, base_hi, ripple_hi, noise_amp) =
            if c < 3 { (0.5, 2.0, 0.8, 0.02) } else { (2.0, 6.0, 2.0, 0.05) };

        // All channel parameters are drawn in a fixed order (and sick-only
        // parameters are drawn even for well participants) so the stream
        // layout is identical across outcomes.
        let f1 = 0.2 + rng.gen::<f64>() * 0.6;
        let f2 = 0.8 + rng.gen::<f64>() * 1.0;
        let a1 = base_lo + rng.gen::<f64>() * (base_hi - base_lo);
        let a2 = 0.2 + rng.gen::<f64>() * (ripple_hi - 0.2);
        let phase1 = rng.gen::<f64>() * std::f64::consts::TAU;
        let phase2 = rng.gen::<f64>() * std::f64::consts::TAU;
        let gate_rate = 1.5 + rng.gen::<f64>() * 1.5;
        let burst_freq = 6.0 + rng.gen::<f64>() * 4.0;
        let burst_amp = a1 * (0.8 + rng.gen::<f64>() * 0.7);

        (0..n)
            .map(|i| {
                let t = i as f64 / cfg.sample_rate_hz;
                let mut v = a1 * (std::f64::consts::TAU * f1 * t + phase1).sin()
                    + a2 * (std::f64::consts::TAU * f2 * t + phase2).sin()
                    + noise_amp * (rng.gen::<f64>() * 2.0 - 1.0);
                if outcome == Outcome::Sick && t >= sick_start_s {
                    // Gated bursts switch on and off abruptly (high jerk)
                    // and the baseline's dominant frequency shifts upward.
                    let gate = f64::from((t * gate_rate).fract() < 0.5);
                    v += severity
                        * (burst_amp * gate * (std::f64::consts::TAU * burst_freq * t).sin()
                            + 0.8 * a1 * (std::f64::consts::TAU * 2.5 * f1 * t + phase1).sin());
                }
                v
            })
            .collect()
    });

    MotionRecording {
        participant_id: format!("synth{:02}", index + 1),
        sample_rate_hz: cfg.sample_rate_hz,
        channels,
        outcome,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::write_recording;
    use crate::kinematics::differentiate;

    #[test]
    fn generation_is_byte_deterministic() {
        let cfg = SynthesisConfig::default();
        let a = synthesize_corpus(&cfg).unwrap();
        let b = synthesize_corpus(&cfg).unwrap();
        assert_eq!(a.recordings, b.recordings);

        let mut bytes_a = Vec::new();
        let mut bytes_b = Vec::new();
        write_recording(&a.recordings[0], &mut bytes_a).unwrap();
        write_recording(&b.recordings[0], &mut bytes_b).unwrap();
        assert_eq!(bytes_a, bytes_b);

        let other = synthesize_corpus(&SynthesisConfig { seed: 8, ..cfg }).unwrap();
        assert_ne!(a.recordings[0].channels, other.recordings[0].channels);
    }

    #[test]
    fn corpus_shape_matches_config() {
        let cfg = SynthesisConfig { n_participants: 5, ..SynthesisConfig::default() };
        let corpus = synthesize_corpus(&cfg).unwrap();
        assert_eq!(corpus.recordings.len(), 5);
        assert_eq!(corpus.count(Outcome::Well), 3);
        assert_eq!(corpus.count(Outcome::Sick), 2);
        for (i, rec) in corpus.recordings.iter().enumerate() {
            assert_eq!(rec.n_samples(), 1800);
            assert_eq!(rec.sample_rate_hz, 60.0);
            assert_eq!(rec.participant_id, format!("synth{:02}", i + 1));
        }
    }

    #[test]
    fn growing_the_corpus_preserves_earlier_participants() {
        let small =
            synthesize_corpus(&SynthesisConfig { n_participants: 4, ..Default::default() })
                .unwrap();
        let large =
            synthesize_corpus(&SynthesisConfig { n_participants: 8, ..Default::default() })
                .unwrap();
        assert_eq!(small.recordings, large.recordings[..4]);
    }

    /// Root-mean-square jerk of one channel span.
    fn jerk_rms(series: &[f64], rate: f64) -> f64 {
        let dt = 1.0 / rate;
        let v = differentiate(series, dt).unwrap();
        let a = differentiate(&v, dt).unwrap();
        let j = differentiate(&a, dt).unwrap();
        (j.iter().map(|x| x * x).sum::<f64>() / j.len() as f64).sqrt()
    }

    #[test]
    fn sick_phase_is_jerk_heavy_only_for_sick_participants() {
        let cfg = SynthesisConfig::default();
        let corpus = synthesize_corpus(&cfg).unwrap();
        let phase = (cfg.sick_phase_s * cfg.sample_rate_hz) as usize;
        for rec in &corpus.recordings {
            let series = &rec.channels[0];
            let early = jerk_rms(&series[..phase], cfg.sample_rate_hz);
            let late = jerk_rms(&series[series.len() - phase..], cfg.sample_rate_hz);
            match rec.outcome {
                Outcome::Sick => assert!(
                    late > 3.0 * early,
                    "{}: late jerk {late:.1} vs early {early:.1}",
                    rec.participant_id
                ),
                Outcome::Well => assert!(
                    late < 2.0 * early,
                    "{}: late jerk {late:.1} vs early {early:.1}",
                    rec.participant_id
                ),
            }
        }
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let ok = SynthesisConfig::default();
        let cases = [
            SynthesisConfig { n_participants: 1, ..ok.clone() },
            SynthesisConfig { sick_phase_s: 40.0, ..ok.clone() },
            SynthesisConfig { sick_phase_s: 0.0, ..ok.clone() },
            SynthesisConfig { sample_rate_hz: 0.0, ..ok.clone() },
        ];
        for bad in cases {
            assert!(matches!(
                synthesize_corpus(&bad),
                Err(HarnessError::InvalidConfig(_))
            ));
        }
    }
}
