//! Recording ingestion and segment labeling.
//!
//! A corpus is a set of per-participant head-tracking recordings plus a
//! manifest that carries each participant's outcome. Recordings hold six
//! parallel channels: position in centimeters (X, Y, Z) and attitude in
//! degrees (Pitch, Roll, Yaw). Labeling carves out the first seconds of every
//! recording as "not sick" and the final seconds of sick participants'
//! recordings as "sick".

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Number of motion channels in a recording.
pub const N_CHANNELS: usize = 6;

/// Canonical channel names, in canonical order.
pub const CHANNEL_NAMES: [&str; N_CHANNELS] = ["X", "Y", "Z", "Pitch", "Roll", "Yaw"];

/// Default sampling rate of the tracker data.
pub const DEFAULT_SAMPLE_RATE_HZ: f64 = 60.0;

/// Default length of each labeled segment, in seconds.
pub const DEFAULT_SEGMENT_LEN_S: f64 = 10.0;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("missing column: {0}")]
    MissingColumn(String),
    #[error("non-finite or unparsable sample at row {row}")]
    NonFiniteSample { row: usize },
    #[error("sample rate mismatch: declared {declared_hz} Hz, observed {observed_hz:.4} Hz")]
    RateMismatch { declared_hz: f64, observed_hz: f64 },
    #[error("recording has no samples")]
    EmptyRecording,
    #[error(
        "recording too short for participant {participant_id}: \
         needs {required_s} s, has {actual_s} s"
    )]
    RecordingTooShort {
        participant_id: String,
        required_s: f64,
        actual_s: f64,
    },
    #[error("invalid outcome {0:?} (expected Well or Sick)")]
    InvalidOutcome(String),
    #[error("invalid sample rate {0} (must be positive and finite)")]
    InvalidRate(f64),
    #[error("manifest row {row} is malformed: {reason}")]
    BadManifestRow { row: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Participant outcome from the sickness questionnaire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Well,
    Sick,
}

impl FromStr for Outcome {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, CorpusError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "well" => Ok(Outcome::Well),
            "sick" => Ok(Outcome::Sick),
            _ => Err(CorpusError::InvalidOutcome(s.to_string())),
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Well => write!(f, "Well"),
            Outcome::Sick => write!(f, "Sick"),
        }
    }
}

/// Binary class label attached to a segment and every window cut from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SegmentLabel {
    NotSick,
    Sick,
}

impl SegmentLabel {
    pub fn as_u8(self) -> u8 {
        match self {
            SegmentLabel::NotSick => 0,
            SegmentLabel::Sick => 1,
        }
    }
}

/// One participant's six-channel recording with its outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct MotionRecording {
    pub participant_id: String,
    pub sample_rate_hz: f64,
    /// Channel series in canonical order (X, Y, Z, Pitch, Roll, Yaw).
    pub channels: [Vec<f64>; N_CHANNELS],
    pub outcome: Outcome,
}

impl MotionRecording {
    pub fn n_samples(&self) -> usize {
        self.channels[0].len()
    }

    pub fn duration_s(&self) -> f64 {
        self.n_samples() as f64 / self.sample_rate_hz
    }
}

/// Half-open sample span of a labeled segment within its recording.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledSegment {
    pub participant_id: String,
    pub label: SegmentLabel,
    /// Start sample index, inclusive.
    pub start: usize,
    /// End sample index, exclusive.
    pub end: usize,
}

impl LabeledSegment {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// Maps input table columns onto the canonical channels.
///
/// `time` names an optional timestamp column; when the column exists the
/// loader cross-checks the declared sample rate against observed intervals.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ColumnMapping {
    pub x: String,
    pub y: String,
    pub z: String,
    pub pitch: String,
    pub roll: String,
    pub yaw: String,
    pub time: Option<String>,
}

impl Default for ColumnMapping {
    fn default() -> Self {
        Self {
            x: "X".into(),
            y: "Y".into(),
            z: "Z".into(),
            pitch: "Pitch".into(),
            roll: "Roll".into(),
            yaw: "Yaw".into(),
            time: Some("t".into()),
        }
    }
}

impl ColumnMapping {
    fn channel_names(&self) -> [&str; N_CHANNELS] {
        [&self.x, &self.y, &self.z, &self.pitch, &self.roll, &self.yaw]
    }
}

/// Loads one delimited-text recording.
///
/// The table must have a header row and one row per sample. Channel columns
/// are located by name through `schema`; the time column, when present, is
/// used only to validate the declared rate (mean inter-sample interval must
/// match within 1%).
pub fn load_recording(
    source: impl Read,
    schema: &ColumnMapping,
    participant_id: &str,
    outcome: Outcome,
    sample_rate_hz: f64,
) -> Result<MotionRecording, CorpusError> {
    if !(sample_rate_hz.is_finite() && sample_rate_hz > 0.0) {
        return Err(CorpusError::InvalidRate(sample_rate_hz));
    }

    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(source);
    let headers = reader.headers()?.clone();
    let find = |name: &str| headers.iter().position(|h| h.trim() == name);

    let mut channel_idx = [0usize; N_CHANNELS];
    for (slot, name) in channel_idx.iter_mut().zip(schema.channel_names()) {
        *slot = find(name).ok_or_else(|| CorpusError::MissingColumn(name.to_string()))?;
    }
    let time_idx = schema.time.as_deref().and_then(find);

    let mut channels: [Vec<f64>; N_CHANNELS] = Default::default();
    let mut times: Vec<f64> = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        for (channel, &col) in channels.iter_mut().zip(&channel_idx) {
            let value = parse_cell(record.get(col), row)?;
            channel.push(value);
        }
        if let Some(col) = time_idx {
            times.push(parse_cell(record.get(col), row)?);
        }
    }

    if channels[0].is_empty() {
        return Err(CorpusError::EmptyRecording);
    }

    if times.len() >= 2 {
        let span = times[times.len() - 1] - times[0];
        let mean_dt = span / (times.len() - 1) as f64;
        let declared_dt = 1.0 / sample_rate_hz;
        if mean_dt <= 0.0 || (mean_dt - declared_dt).abs() > 0.01 * declared_dt {
            return Err(CorpusError::RateMismatch {
                declared_hz: sample_rate_hz,
                observed_hz: if mean_dt > 0.0 { 1.0 / mean_dt } else { f64::NAN },
            });
        }
    }

    Ok(MotionRecording {
        participant_id: participant_id.to_string(),
        sample_rate_hz,
        channels,
        outcome,
    })
}

fn parse_cell(cell: Option<&str>, row: usize) -> Result<f64, CorpusError> {
    let value: f64 = cell
        .and_then(|c| c.trim().parse().ok())
        .ok_or(CorpusError::NonFiniteSample { row })?;
    if !value.is_finite() {
        return Err(CorpusError::NonFiniteSample { row });
    }
    Ok(value)
}

/// Writes a recording in the canonical table format (`t` column first).
///
/// Values are printed with the shortest representation that reloads to the
/// identical bits, so write-then-load round-trips exactly.
pub fn write_recording(rec: &MotionRecording, mut out: impl Write) -> Result<(), CorpusError> {
    writeln!(out, "t,X,Y,Z,Pitch,Roll,Yaw")?;
    let dt = 1.0 / rec.sample_rate_hz;
    for i in 0..rec.n_samples() {
        write!(out, "{}", i as f64 * dt)?;
        for channel in &rec.channels {
            write!(out, ",{}", channel[i])?;
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Extracts the labeled segments of one recording.
///
/// Every participant contributes a not-sick segment from the start of the
/// recording; sick participants also contribute a sick segment from the very
/// end, including those who stopped early. A recording too short to fit the
/// required segments is an error so callers can report and skip it rather
/// than silently truncate.
pub fn label_segments(
    rec: &MotionRecording,
    segment_len_s: f64,
) -> Result<Vec<LabeledSegment>, CorpusError> {
    let n = rec.n_samples();
    let seg_len = (segment_len_s * rec.sample_rate_hz).round() as usize;
    let required_s = match rec.outcome {
        Outcome::Well => segment_len_s,
        Outcome::Sick => 2.0 * segment_len_s,
    };
    let required_samples = match rec.outcome {
        Outcome::Well => seg_len,
        Outcome::Sick => 2 * seg_len,
    };
    if seg_len == 0 || n < required_samples {
        return Err(CorpusError::RecordingTooShort {
            participant_id: rec.participant_id.clone(),
            required_s,
            actual_s: rec.duration_s(),
        });
    }

    let mut segments = vec![LabeledSegment {
        participant_id: rec.participant_id.clone(),
        label: SegmentLabel::NotSick,
        start: 0,
        end: seg_len,
    }];
    if rec.outcome == Outcome::Sick {
        segments.push(LabeledSegment {
            participant_id: rec.participant_id.clone(),
            label: SegmentLabel::Sick,
            start: n - seg_len,
            end: n,
        });
    }
    Ok(segments)
}

/// One manifest row: participant, outcome, and recording file path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub participant_id: String,
    pub outcome: Outcome,
    pub path: PathBuf,
}

/// Reads a manifest table with header `participant_id,outcome,path`.
///
/// Outcome parsing is case-insensitive; anything other than Well/Sick is a
/// hard load error. Duplicate participant ids are also rejected.
pub fn load_manifest(path: &Path) -> Result<Vec<ManifestEntry>, CorpusError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_path(path)?;
    let headers = reader.headers()?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| CorpusError::MissingColumn(name.to_string()))
    };
    let id_col = col("participant_id")?;
    let outcome_col = col("outcome")?;
    let path_col = col("path")?;

    let mut entries = Vec::new();
    let mut seen = BTreeMap::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let get = |idx: usize| {
            record.get(idx).map(str::trim).filter(|s| !s.is_empty()).ok_or_else(|| {
                CorpusError::BadManifestRow {
                    row,
                    reason: "missing field".into(),
                }
            })
        };
        let participant_id = get(id_col)?.to_string();
        if seen.insert(participant_id.clone(), row).is_some() {
            return Err(CorpusError::BadManifestRow {
                row,
                reason: format!("duplicate participant_id {participant_id:?}"),
            });
        }
        entries.push(ManifestEntry {
            participant_id,
            outcome: get(outcome_col)?.parse()?,
            path: PathBuf::from(get(path_col)?),
        });
    }
    Ok(entries)
}

/// A loaded corpus: every recording named by the manifest.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub recordings: Vec<MotionRecording>,
}

impl Corpus {
    /// Outcome per participant, keyed by id.
    pub fn outcomes(&self) -> BTreeMap<String, Outcome> {
        self.recordings
            .iter()
            .map(|r| (r.participant_id.clone(), r.outcome))
            .collect()
    }

    pub fn count(&self, outcome: Outcome) -> usize {
        self.recordings.iter().filter(|r| r.outcome == outcome).count()
    }
}

/// Loads a whole corpus from a manifest file.
///
/// Recording paths in the manifest are resolved relative to the manifest's
/// own directory. Recordings are immutable after load, so entries may be
/// loaded in parallel by callers that need to; this loader is sequential.
pub fn load_corpus(
    manifest_path: &Path,
    schema: &ColumnMapping,
    sample_rate_hz: f64,
) -> Result<Corpus, CorpusError> {
    let entries = load_manifest(manifest_path)?;
    let base = manifest_path.parent().unwrap_or_else(|| Path::new("."));
    let mut recordings = Vec::with_capacity(entries.len());
    for entry in &entries {
        let full = if entry.path.is_absolute() {
            entry.path.clone()
        } else {
            base.join(&entry.path)
        };
        let file = std::fs::File::open(&full)?;
        recordings.push(load_recording(
            file,
            schema,
            &entry.participant_id,
            entry.outcome,
            sample_rate_hz,
        )?);
    }
    Ok(Corpus { recordings })
}
