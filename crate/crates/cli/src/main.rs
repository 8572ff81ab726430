//! Command-line front end for the head-kinematics cybersickness pipeline.
//!
//! Four subcommands cover the workflow end to end: `synth` writes a
//! deterministic synthetic corpus, `features` inspects the registry or
//! extracts a window-level feature matrix, `run` executes the repeated
//! evaluation protocol and writes its reports and per-repetition
//! artifacts, and `report` re-renders a saved JSON report as text.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use kinemark_core::corpus::{load_corpus, write_recording, ColumnMapping, Corpus};
use kinemark_core::features::feature_names;
use kinemark_core::harness::report::render_text;
use kinemark_core::harness::synth::{synthesize_corpus, SynthesisConfig};
use kinemark_core::harness::{
    extract_corpus_features, run_experiment, EvaluationReport, ExperimentConfig, Setting,
};
use kinemark_core::models::ModelKind;

#[derive(Parser)]
#[command(
    name = "kinemark",
    version,
    about = "Cybersickness detection from head-movement kinematics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a deterministic synthetic head-movement corpus
    Synth(SynthArgs),
    /// Inspect the feature registry or extract a feature matrix
    #[command(subcommand)]
    Features(FeaturesCommand),
    /// Run the repeated evaluation protocol on a corpus
    Run(RunArgs),
    /// Re-render a saved report.json as plain text
    Report(ReportArgs),
}

#[derive(Args)]
struct SynthArgs {
    /// Directory for the recordings and their manifest
    #[arg(long)]
    out: PathBuf,
    /// Participant count; outcomes alternate well/sick
    #[arg(long, default_value_t = 12)]
    participants: usize,
    /// Recording length in seconds
    #[arg(long, default_value_t = 30.0)]
    duration_s: f64,
    /// Sampling rate of the generated recordings
    #[arg(long, default_value_t = 60.0)]
    rate_hz: f64,
    /// Trailing span in which sick participants' dynamics change
    #[arg(long, default_value_t = 10.0)]
    sick_phase_s: f64,
    /// Generator seed; same seed, same corpus
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Subcommand)]
enum FeaturesCommand {
    /// Print every feature name of a setting, one per line
    List {
        #[arg(long, default_value = "S4")]
        setting: String,
    },
    /// Extract the windowed feature matrix of a corpus to CSV
    Extract(ExtractArgs),
}

#[derive(Args)]
struct ExtractArgs {
    /// Corpus manifest (participant_id,outcome,path)
    #[arg(long)]
    manifest: PathBuf,
    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
    /// Derivative setting, S1 (movement only) to S4 (through jerk)
    #[arg(long, default_value = "S4")]
    setting: String,
    /// Sampling rate of the recordings
    #[arg(long, default_value_t = 60.0)]
    rate_hz: f64,
    /// Window length in seconds
    #[arg(long, default_value_t = 1.0)]
    window_s: f64,
    /// Window stride in seconds (equal to the length = non-overlapping)
    #[arg(long, default_value_t = 1.0)]
    stride_s: f64,
    /// Segment length in seconds for the outcome-phase labelling
    #[arg(long, default_value_t = 10.0)]
    segment_s: f64,
}

#[derive(Args)]
struct RunArgs {
    /// Corpus manifest (participant_id,outcome,path)
    #[arg(long, visible_alias = "corpus")]
    manifest: PathBuf,
    /// Directory for reports and per-repetition artifacts
    #[arg(long)]
    out: PathBuf,
    /// TOML experiment configuration; flags below override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// Derivative setting, S1 (movement only) to S4 (through jerk)
    #[arg(long)]
    setting: Option<String>,
    /// Monte Carlo repetitions
    #[arg(long, visible_alias = "reps")]
    repetitions: Option<usize>,
    /// Features kept by recursive elimination
    #[arg(long)]
    k_features: Option<usize>,
    /// Window length in seconds
    #[arg(long)]
    window_s: Option<f64>,
    /// Fraction of each outcome stratum held out per repetition
    #[arg(long)]
    test_fraction: Option<f64>,
    /// Seed from which every repetition derives its randomness
    #[arg(long, visible_alias = "seed")]
    base_seed: Option<u64>,
    /// Comma-separated model roster (e.g. "GB,RF,KNN")
    #[arg(long)]
    roster: Option<String>,
    /// Sampling rate of the corpus recordings
    #[arg(long, default_value_t = 60.0)]
    rate_hz: f64,
}

#[derive(Args)]
struct ReportArgs {
    /// A report.json written by `kinemark run`
    #[arg(long)]
    json: PathBuf,
    /// Output format: text or json
    #[arg(long, default_value = "text")]
    format: String,
}

fn main() -> ExitCode {
    let result = match Cli::parse().command {
        Command::Synth(args) => synth(args),
        Command::Features(FeaturesCommand::List { setting }) => list_features(&setting),
        Command::Features(FeaturesCommand::Extract(args)) => extract(args),
        Command::Run(args) => run(args),
        Command::Report(args) => report(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            // A reader that stops consuming stdout (`kinemark report | head`)
            // closes the pipe; that is the reader's choice, not a failure.
            let broken_pipe = error.chain().any(|cause| {
                cause
                    .downcast_ref::<io::Error>()
                    .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe)
            });
            if broken_pipe {
                return ExitCode::SUCCESS;
            }
            eprintln!("Error: {error:#}");
            ExitCode::FAILURE
        }
    }
}

fn parse_setting(text: &str) -> Result<Setting> {
    Setting::parse(text)
        .ok_or_else(|| anyhow::anyhow!("unknown setting {text:?} (expected S1, S2, S3, or S4)"))
}

fn parse_roster(text: &str) -> Result<Vec<ModelKind>> {
    text.split(',')
        .map(|token| {
            ModelKind::parse(token)
                .ok_or_else(|| anyhow::anyhow!("unknown model {token:?} in roster"))
        })
        .collect()
}

fn synth(args: SynthArgs) -> Result<()> {
    let corpus = synthesize_corpus(&SynthesisConfig {
        n_participants: args.participants,
        duration_s: args.duration_s,
        sample_rate_hz: args.rate_hz,
        sick_phase_s: args.sick_phase_s,
        seed: args.seed,
    })?;

    fs::create_dir_all(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    let mut manifest = String::from("participant_id,outcome,path\n");
    for rec in &corpus.recordings {
        let file_name = format!("{}.csv", rec.participant_id);
        let file = fs::File::create(args.out.join(&file_name))?;
        write_recording(rec, io::BufWriter::new(file))?;
        manifest.push_str(&format!("{},{},{file_name}\n", rec.participant_id, rec.outcome));
    }
    let manifest_path = args.out.join("manifest.csv");
    fs::write(&manifest_path, manifest)?;
    writeln!(
        io::stdout(),
        "wrote {} recordings and {}",
        corpus.recordings.len(),
        manifest_path.display()
    )?;
    Ok(())
}

fn list_features(setting: &str) -> Result<()> {
    let setting = parse_setting(setting)?;
    let mut out = io::BufWriter::new(io::stdout().lock());
    for name in feature_names(setting.orders())? {
        writeln!(out, "{name}")?;
    }
    out.flush()?;
    Ok(())
}

fn load_corpus_for(manifest: &Path, rate_hz: f64) -> Result<Corpus> {
    load_corpus(manifest, &ColumnMapping::default(), rate_hz)
        .with_context(|| format!("loading corpus from {}", manifest.display()))
}

fn extract(args: ExtractArgs) -> Result<()> {
    let corpus = load_corpus_for(&args.manifest, args.rate_hz)?;
    let config = ExperimentConfig {
        setting: parse_setting(&args.setting)?,
        window_len_s: args.window_s,
        stride_s: args.stride_s,
        segment_len_s: args.segment_s,
        ..ExperimentConfig::default()
    };
    let matrix = extract_corpus_features(&corpus, &config)?;
    if let Some(parent) = args.out.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    let file = fs::File::create(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    matrix.write_csv(io::BufWriter::new(file))?;
    writeln!(
        io::stdout(),
        "wrote {} windows x {} features to {}",
        matrix.n_rows(),
        matrix.n_features(),
        args.out.display()
    )?;
    Ok(())
}

fn build_config(args: &RunArgs) -> Result<ExperimentConfig> {
    let mut config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => ExperimentConfig::default(),
    };
    if let Some(setting) = &args.setting {
        config.setting = parse_setting(setting)?;
    }
    if let Some(repetitions) = args.repetitions {
        config.repetitions = repetitions;
    }
    if let Some(k) = args.k_features {
        config.k_features = k;
    }
    if let Some(window_s) = args.window_s {
        config.window_len_s = window_s;
    }
    if let Some(fraction) = args.test_fraction {
        config.test_fraction = fraction;
    }
    if let Some(seed) = args.base_seed {
        config.base_seed = seed;
    }
    if let Some(roster) = &args.roster {
        config.roster = parse_roster(roster)?;
    }
    config.validate()?;
    Ok(config)
}

fn run(args: RunArgs) -> Result<()> {
    let config = build_config(&args)?;
    let corpus = load_corpus_for(&args.manifest, args.rate_hz)?;
    writeln!(
        io::stdout(),
        "running {} on {} participants: {} repetitions, {} models",
        config.setting.name(),
        corpus.recordings.len(),
        config.repetitions,
        config.roster.len()
    )?;

    let started = std::time::Instant::now();
    let run = run_experiment(&corpus, &config)?;
    let elapsed = started.elapsed();

    fs::create_dir_all(&args.out)?;
    fs::write(args.out.join("report.txt"), render_text(&run.report))?;
    fs::write(
        args.out.join("report.json"),
        serde_json::to_string_pretty(&run.report)?,
    )?;
    for rep in &run.repetitions {
        let dir = args.out.join("repetitions").join(format!("rep_{:03}", rep.rep_index));
        fs::create_dir_all(&dir)?;
        let mut split = Vec::new();
        rep.plan.write_csv(&mut split)?;
        fs::write(dir.join("split.csv"), split)?;
        let mut mask = Vec::new();
        rep.mask.write_text(&mut mask)?;
        fs::write(dir.join("selected_features.txt"), mask)?;
    }

    let best = run
        .report
        .models
        .iter()
        .find(|m| m.kind == run.report.best_model)
        .expect("best model is summarized");
    let mut out = io::stdout();
    writeln!(
        out,
        "best model: {} with mean accuracy {:.1}% ({} repetitions in {:.1} s)",
        best.kind.display_name(),
        best.accuracy_mean * 100.0,
        config.repetitions,
        elapsed.as_secs_f64()
    )?;
    writeln!(out, "report written to {}", args.out.join("report.txt").display())?;
    Ok(())
}

fn report(args: ReportArgs) -> Result<()> {
    let text = fs::read_to_string(&args.json)
        .with_context(|| format!("reading {}", args.json.display()))?;
    let report: EvaluationReport = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", args.json.display()))?;
    if report.config_hash != report.config.hash() {
        bail!(
            "report config hash {} does not match its configuration (expected {})",
            report.config_hash,
            report.config.hash()
        );
    }
    match args.format.as_str() {
        "text" => write!(io::stdout(), "{}", render_text(&report))?,
        "json" => writeln!(io::stdout(), "{}", serde_json::to_string_pretty(&report)?)?,
        other => bail!("unsupported format {other:?} (expected text or json)"),
    }
    Ok(())
}
