//! Command-line front end. `run` takes the argument list and output streams
//! so it can be driven from tests without spawning a process.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::emit::{write_smf, write_text_score, EmitError, SmfConfig};
use crate::ingest::{
    parse_spec, parse_table, parse_time_signature, ColumnData, Dataset, IngestError, MelodySpec,
    TableFormat, TEMPO_RANGE,
};
use crate::melodifier::{melodify, MelodifyError, PHRASE_BARS};
use crate::score::{expand_loops, total_duration_ticks, Score};
use crate::stats::{
    compute_density, compute_variance, proportions, segment_trends, DensityClass, Proportions,
    StatsError, TrendSegment, VarianceClass, VarianceLevel, DEFAULT_MAX_SEGMENTS,
};
use crate::theory::PitchClass;
use crate::tracklist::{check_character, render, tracks, RenderError};

#[derive(Debug, Parser)]
#[command(
    name = "melodify",
    version,
    about = "Compile data and chart specs into music"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compile a table and spec into a MIDI file and/or text score.
    Compile(CompileArgs),
    /// Print the trend, density, variance and proportions of a column as JSON.
    Analyze(AnalyzeArgs),
    /// Write the nine bundled demonstration tracks.
    Tracklist(TracklistArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EmitFormat {
    Midi,
    Text,
    Both,
}

#[derive(Debug, Args)]
struct CompileArgs {
    /// Data table (.csv, or .json for an array of records).
    #[arg(long)]
    data: PathBuf,
    /// Melody spec as a JSON object; flags below override its fields.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    idiom: Option<String>,
    #[arg(long)]
    palette: Option<String>,
    /// Key root, e.g. C, F#, Bb.
    #[arg(long)]
    key: Option<String>,
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    y: Option<String>,
    /// Tempo in BPM (20-300).
    #[arg(long)]
    tempo: Option<u16>,
    /// Time signature, e.g. 3/4.
    #[arg(long)]
    time: Option<String>,
    /// Pie cycle repetitions.
    #[arg(long = "loop")]
    loop_count: Option<u32>,
    /// Treat a bar chart with a numeric x column as a histogram.
    #[arg(long)]
    histogram: bool,
    #[arg(long, value_enum, default_value = "midi")]
    emit: EmitFormat,
    /// Output path; the extension is replaced by .mid / .txt as needed.
    /// Defaults to the data path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[arg(long)]
    data: PathBuf,
    #[arg(long)]
    y: String,
    /// Numeric x orders the series; categorical x adds proportions.
    #[arg(long)]
    x: Option<String>,
}

#[derive(Debug, Args)]
struct TracklistArgs {
    /// Output directory (created if missing).
    #[arg(long)]
    out: PathBuf,
}

/// Stable error codes printed at the start of every error message.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCode {
    Io,
    Parse,
    Binding,
    Proportion,
    Internal,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::Io => "E_IO",
            ErrorCode::Parse => "E_PARSE",
            ErrorCode::Binding => "E_BINDING",
            ErrorCode::Proportion => "E_PROPORTION",
            ErrorCode::Internal => "E_INTERNAL",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            ErrorCode::Internal => 2,
            _ => 1,
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: ErrorCode,
    pub message: String,
}

impl CliError {
    fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }

    fn io(path: &Path, err: std::io::Error) -> Self {
        CliError::new(ErrorCode::Io, format!("{}: {err}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code.as_str(), self.message)
    }
}

impl From<IngestError> for CliError {
    fn from(e: IngestError) -> Self {
        let code = match e {
            IngestError::MalformedInput(_)
            | IngestError::EmptyDataset
            | IngestError::UnknownIdiom(_)
            | IngestError::UnknownPalette(_)
            | IngestError::InvalidValue { .. } => ErrorCode::Parse,
            IngestError::MissingField(_)
            | IngestError::UnknownColumn(_)
            | IngestError::KindMismatch(_) => ErrorCode::Binding,
            IngestError::NegativeProportion { .. } | IngestError::ZeroProportions => {
                ErrorCode::Proportion
            }
        };
        CliError::new(code, e.to_string())
    }
}

impl From<StatsError> for CliError {
    fn from(e: StatsError) -> Self {
        let code = match e {
            StatsError::AllZero | StatsError::NegativeValue(_) => ErrorCode::Proportion,
            StatsError::TooShort { .. } => ErrorCode::Binding,
            StatsError::NoSegments => ErrorCode::Internal,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<MelodifyError> for CliError {
    fn from(e: MelodifyError) -> Self {
        match e {
            MelodifyError::Ingest(e) => e.into(),
            MelodifyError::Stats(e) => e.into(),
            MelodifyError::Theory(e) => CliError::new(ErrorCode::Internal, e.to_string()),
        }
    }
}

impl From<EmitError> for CliError {
    fn from(e: EmitError) -> Self {
        CliError::new(ErrorCode::Internal, e.to_string())
    }
}

impl From<RenderError> for CliError {
    fn from(e: RenderError) -> Self {
        match e {
            RenderError::Melodify(e) => e.into(),
            RenderError::Emit(e) => e.into(),
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::io(path, e))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

fn load_dataset(path: &Path) -> Result<Dataset, CliError> {
    Ok(parse_table(&read(path)?, TableFormat::from_path(path))?)
}

fn required<'a>(value: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    value.as_deref().ok_or_else(|| {
        CliError::new(
            ErrorCode::Parse,
            format!("--{flag} is required when no --spec file is given"),
        )
    })
}

fn build_spec(args: &CompileArgs) -> Result<MelodySpec, CliError> {
    let mut spec = match &args.spec {
        Some(path) => parse_spec(&read(path)?)?,
        None => MelodySpec::new(
            required(&args.idiom, "idiom")?.parse()?,
            required(&args.palette, "palette")?.parse()?,
            required(&args.y, "y")?,
        ),
    };
    if let Some(idiom) = &args.idiom {
        spec.idiom = idiom.parse()?;
    }
    if let Some(palette) = &args.palette {
        spec.palette = palette.parse()?;
    }
    if let Some(y) = &args.y {
        spec.y_field = y.clone();
    }
    if let Some(x) = &args.x {
        spec.x_field = Some(x.clone());
    }
    if let Some(key) = &args.key {
        spec.key_root = PitchClass::from_name(key).ok_or_else(|| {
            CliError::new(ErrorCode::Parse, format!("--key: unknown note {key:?}"))
        })?;
    }
    if let Some(tempo) = args.tempo {
        if !TEMPO_RANGE.contains(&tempo) {
            return Err(CliError::new(
                ErrorCode::Parse,
                format!("--tempo {tempo} is outside 20..=300 BPM"),
            ));
        }
        spec.tempo_bpm = Some(tempo);
    }
    if let Some(time) = &args.time {
        spec.time_signature = Some(parse_time_signature(time)?);
    }
    if let Some(count) = args.loop_count {
        if count == 0 {
            return Err(CliError::new(ErrorCode::Parse, "--loop must be at least 1"));
        }
        spec.loop_count = count;
    }
    if args.histogram {
        spec.histogram = true;
    }
    Ok(spec)
}

fn seconds(score: &Score, ticks: u64) -> f64 {
    ticks as f64 * 60.0 / (score.tempo_bpm as f64 * score.ticks_per_quarter as f64)
}

fn cmd_compile(args: &CompileArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let dataset = load_dataset(&args.data)?;
    let spec = build_spec(args)?;
    let score = melodify(&dataset, &spec)?;
    let expanded = expand_loops(&score);
    let base = args.out.clone().unwrap_or_else(|| args.data.clone());
    let mut written = Vec::new();
    if matches!(args.emit, EmitFormat::Midi | EmitFormat::Both) {
        let path = base.with_extension("mid");
        write(&path, &write_smf(&expanded, &SmfConfig::default())?)?;
        written.push(path);
    }
    if matches!(args.emit, EmitFormat::Text | EmitFormat::Both) {
        let path = base.with_extension("txt");
        write(&path, write_text_score(&score).as_bytes())?;
        written.push(path);
    }
    let ticks = total_duration_ticks(&score);
    let files: Vec<String> = written.iter().map(|p| p.display().to_string()).collect();
    let _ = writeln!(
        stdout,
        "{} {}: {} notes, {} ticks ({:.1} s) -> {}",
        spec.idiom,
        spec.palette,
        expanded.notes().count(),
        ticks,
        seconds(&score, ticks),
        files.join(", ")
    );
    Ok(())
}

#[derive(Serialize)]
struct Analysis {
    rows: usize,
    segments: Vec<TrendSegment>,
    density: DensityClass,
    variance: VarianceClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    proportions: Option<Proportions>,
}

fn cmd_analyze(args: &AnalyzeArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let dataset = load_dataset(&args.data)?;
    let column = |name: &str| {
        dataset
            .column(name)
            .ok_or_else(|| CliError::from(IngestError::UnknownColumn(name.to_string())))
    };
    let y = column(&args.y)?.as_quantitative().ok_or_else(|| {
        CliError::from(IngestError::KindMismatch(format!(
            "{:?} must be quantitative",
            args.y
        )))
    })?;
    let mut series = y.to_vec();
    let mut shares = None;
    if let Some(x) = &args.x {
        match &column(x)?.data {
            ColumnData::Quantitative(xs) => {
                let mut order: Vec<usize> = (0..xs.len()).collect();
                order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
                series = order.into_iter().map(|i| y[i]).collect();
            }
            ColumnData::Categorical(labels) => {
                let pairs: Vec<(&str, f64)> = labels
                    .iter()
                    .map(String::as_str)
                    .zip(y.iter().copied())
                    .collect();
                shares = Some(proportions(&pairs)?);
            }
        }
    }
    let analysis = Analysis {
        rows: series.len(),
        segments: segment_trends(&series, DEFAULT_MAX_SEGMENTS)?,
        density: compute_density(series.len(), PHRASE_BARS),
        variance: if series.len() < 2 {
            VarianceClass::from_level(VarianceLevel::Narrow, 0.0)
        } else {
            compute_variance(&series)?
        },
        proportions: shares,
    };
    let json = serde_json::to_string_pretty(&analysis)
        .map_err(|e| CliError::new(ErrorCode::Internal, e.to_string()))?;
    let _ = writeln!(stdout, "{json}");
    Ok(())
}

fn cmd_tracklist(args: &TracklistArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    std::fs::create_dir_all(&args.out).map_err(|e| CliError::io(&args.out, e))?;
    for track in tracks() {
        check_character(&track).map_err(|m| CliError::new(ErrorCode::Internal, m))?;
        let rendered = render(&track)?;
        let base = args.out.join(track.name);
        write(&base.with_extension("mid"), &rendered.midi)?;
        write(&base.with_extension("txt"), rendered.text.as_bytes())?;
        let _ = writeln!(stdout, "{}", track.name);
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code: 0 on success, 1 for input errors, 2 for internal
/// failures, including panics.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let _ = write!(stderr, "{}: {e}", ErrorCode::Parse.as_str());
            return 1;
        }
    };
    let outcome = panic::catch_unwind(AssertUnwindSafe(|| match &cli.command {
        Command::Compile(a) => cmd_compile(a, stdout),
        Command::Analyze(a) => cmd_analyze(a, stdout),
        Command::Tracklist(a) => cmd_tracklist(a, stdout),
    }));
    let result = outcome.unwrap_or_else(|payload| {
        let detail = payload
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "unknown panic".into());
        Err(CliError::new(ErrorCode::Internal, detail))
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.code.exit_code()
        }
    }
}
