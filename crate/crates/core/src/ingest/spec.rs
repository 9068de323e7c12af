use std::fmt;
use std::str::FromStr;

use serde_json::{Map, Value};

use super::IngestError;
use crate::score::TimeSignature;
use crate::theory::PitchClass;

pub const DEFAULT_LOOP_COUNT: u32 = 2;
pub const TEMPO_RANGE: std::ops::RangeInclusive<u16> = 20..=300;

const KNOWN_KEYS: [&str; 9] = [
    "idiom",
    "palette",
    "key",
    "x",
    "y",
    "tempo",
    "time_signature",
    "loop",
    "histogram",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Idiom {
    Bar,
    Pie,
    Line,
    Scatter,
}

impl Idiom {
    pub const ALL: [Idiom; 4] = [Idiom::Bar, Idiom::Pie, Idiom::Line, Idiom::Scatter];

    pub fn name(self) -> &'static str {
        match self {
            Idiom::Bar => "bar",
            Idiom::Pie => "pie",
            Idiom::Line => "line",
            Idiom::Scatter => "scatter",
        }
    }
}

impl FromStr for Idiom {
    type Err = IngestError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bar" => Ok(Idiom::Bar),
            "pie" => Ok(Idiom::Pie),
            "line" => Ok(Idiom::Line),
            "scatter" => Ok(Idiom::Scatter),
            _ => Err(IngestError::UnknownIdiom(s.to_string())),
        }
    }
}

impl fmt::Display for Idiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Palette {
    Positive,
    Negative,
    Grey,
    Exciting,
    Calm,
}

impl Palette {
    pub const ALL: [Palette; 5] = [
        Palette::Positive,
        Palette::Negative,
        Palette::Grey,
        Palette::Exciting,
        Palette::Calm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Palette::Positive => "positive",
            Palette::Negative => "negative",
            Palette::Grey => "grey",
            Palette::Exciting => "exciting",
            Palette::Calm => "calm",
        }
    }
}

impl FromStr for Palette {
    type Err = IngestError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "positive" => Ok(Palette::Positive),
            "negative" => Ok(Palette::Negative),
            "grey" | "gray" => Ok(Palette::Grey),
            "exciting" => Ok(Palette::Exciting),
            "calm" => Ok(Palette::Calm),
            _ => Err(IngestError::UnknownPalette(s.to_string())),
        }
    }
}

impl fmt::Display for Palette {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What the user asked for: which chart to melodify, in which colours.
#[derive(Debug, Clone, PartialEq)]
pub struct MelodySpec {
    pub idiom: Idiom,
    pub palette: Palette,
    pub key_root: PitchClass,
    pub x_field: Option<String>,
    pub y_field: String,
    pub tempo_bpm: Option<u16>,
    pub time_signature: Option<TimeSignature>,
    /// Pie cycle repetitions.
    pub loop_count: u32,
    /// Treat a bar chart with numeric x as a histogram (density drives pedal).
    pub histogram: bool,
}

impl MelodySpec {
    pub fn new(idiom: Idiom, palette: Palette, y_field: impl Into<String>) -> Self {
        MelodySpec {
            idiom,
            palette,
            key_root: PitchClass::C,
            x_field: None,
            y_field: y_field.into(),
            tempo_bpm: None,
            time_signature: None,
            loop_count: DEFAULT_LOOP_COUNT,
            histogram: false,
        }
    }

    pub fn with_x(mut self, x: impl Into<String>) -> Self {
        self.x_field = Some(x.into());
        self
    }

    pub fn with_key(mut self, key_root: PitchClass) -> Self {
        self.key_root = key_root;
        self
    }
}

fn invalid(field: &str, reason: impl Into<String>) -> IngestError {
    IngestError::InvalidValue {
        field: field.to_string(),
        reason: reason.into(),
    }
}

fn string_field<'a>(
    obj: &'a Map<String, Value>,
    key: &str,
) -> Result<Option<&'a str>, IngestError> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.as_str())),
        Some(other) => Err(invalid(key, format!("expected a string, got {other}"))),
    }
}

fn integer_field(obj: &Map<String, Value>, key: &str) -> Result<Option<u64>, IngestError> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::Number(n)) => n
            .as_u64()
            .map(Some)
            .ok_or_else(|| invalid(key, format!("expected a non-negative integer, got {n}"))),
        Some(other) => Err(invalid(key, format!("expected an integer, got {other}"))),
    }
}

pub fn parse_time_signature(s: &str) -> Result<TimeSignature, IngestError> {
    let (num, den) = s
        .trim()
        .split_once('/')
        .ok_or_else(|| invalid("time_signature", format!("expected N/D, got {s:?}")))?;
    let numerator: u8 = num
        .trim()
        .parse()
        .map_err(|_| invalid("time_signature", format!("bad numerator {num:?}")))?;
    let denominator: u8 = den
        .trim()
        .parse()
        .map_err(|_| invalid("time_signature", format!("bad denominator {den:?}")))?;
    TimeSignature::new(numerator, denominator).ok_or_else(|| {
        invalid(
            "time_signature",
            format!("{s} needs numerator 1..=32 and denominator a power of two up to 32"),
        )
    })
}

/// Parses a JSON melody specification (a single object).
pub fn parse_spec(raw: &[u8]) -> Result<MelodySpec, IngestError> {
    let value: Value =
        serde_json::from_slice(raw).map_err(|e| IngestError::MalformedInput(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| IngestError::MalformedInput("spec must be a JSON object".into()))?;
    if let Some(unknown) = obj.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
        return Err(invalid(unknown, "unknown key"));
    }

    let idiom: Idiom = string_field(obj, "idiom")?
        .ok_or(IngestError::MissingField("idiom"))?
        .parse()?;
    let palette: Palette = string_field(obj, "palette")?
        .ok_or(IngestError::MissingField("palette"))?
        .parse()?;
    let y_field = string_field(obj, "y")?
        .ok_or(IngestError::MissingField("y"))?
        .to_string();
    let mut spec = MelodySpec::new(idiom, palette, y_field);

    if let Some(key) = string_field(obj, "key")? {
        spec.key_root = PitchClass::from_name(key)
            .ok_or_else(|| invalid("key", format!("unknown note {key:?}")))?;
    }
    spec.x_field = string_field(obj, "x")?.map(str::to_string);
    if let Some(tempo) = integer_field(obj, "tempo")? {
        let tempo = u16::try_from(tempo)
            .ok()
            .filter(|t| TEMPO_RANGE.contains(t))
            .ok_or_else(|| invalid("tempo", format!("{tempo} is outside 20..=300 BPM")))?;
        spec.tempo_bpm = Some(tempo);
    }
    if let Some(ts) = string_field(obj, "time_signature")? {
        spec.time_signature = Some(parse_time_signature(ts)?);
    }
    if let Some(count) = integer_field(obj, "loop")? {
        spec.loop_count = u32::try_from(count)
            .ok()
            .filter(|&c| c >= 1)
            .ok_or_else(|| invalid("loop", format!("{count} is not a positive count")))?;
    }
    match obj.get("histogram") {
        None | Some(Value::Null) => {}
        Some(Value::Bool(b)) => spec.histogram = *b,
        Some(other) => {
            return Err(invalid(
                "histogram",
                format!("expected a boolean, got {other}"),
            ))
        }
    }
    Ok(spec)
}
