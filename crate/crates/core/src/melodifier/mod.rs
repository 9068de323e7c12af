//! Turns a bound dataset into a score: palette to tonality, data
//! characteristics to texture, idiom to musical gesture.

mod bar;
mod line;
mod scatter;

use serde::Serialize;
use thiserror::Error;

use crate::ingest::{validate_binding, Binding, Dataset, Idiom, IngestError, MelodySpec, Palette};
use crate::score::{Articulation, KeySignature, NoteEvent, Score, TimeSignature};
use crate::stats::{
    compute_density, compute_variance, proportions, segment_trends, DensityClass, Proportions,
    StatsError, TrendSegment, VarianceClass, VarianceLevel, DEFAULT_MAX_SEGMENTS,
};
use crate::theory::{make_cadence, CadenceKind, Mode, Pitch, Scale, TheoryError};

pub use bar::{apportion, melodify_bar, melodify_pie, pie_cycle_ticks, PIE_CYCLE_BARS};
pub use line::{melodify_line, slope_unit};
pub use scatter::melodify_scatter;

/// Bars in one phrase; density is measured against this many bars.
pub const PHRASE_BARS: usize = 4;
/// MIDI note number of the C an octave below middle C; the anchor is this
/// plus the key root.
pub const ANCHOR_BASE: u8 = 48;

pub const VELOCITY_NORMAL: u8 = 80;
pub const VELOCITY_ACCENT: u8 = 112;
pub const VELOCITY_CADENCE: u8 = 96;

#[derive(Debug, Error)]
pub enum MelodifyError {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Theory(#[from] TheoryError),
}

/// Key, tempo, meter and closing gesture chosen from the palette.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TonalPlan {
    pub scale: Scale,
    /// Lowest pitch of the melodic range; always the scale's tonic.
    pub anchor: Pitch,
    pub tempo_bpm: u16,
    pub time_signature: TimeSignature,
    pub cadence: CadenceKind,
}

impl TonalPlan {
    pub fn key_signature(&self) -> KeySignature {
        KeySignature::from(self.scale)
    }

    fn empty_score(&self) -> Score {
        Score::new(self.tempo_bpm, self.time_signature, self.key_signature())
    }
}

/// Positive, Exciting and Calm are major; Negative is natural minor; Grey is
/// chromatic. Exciting and Calm differ from Positive only in tempo and meter.
pub fn apply_palette(spec: &MelodySpec) -> TonalPlan {
    let (mode, tempo, meter, cadence) = match spec.palette {
        Palette::Positive => (Mode::Major, 120, (4, 4), CadenceKind::Perfect),
        Palette::Negative => (Mode::NaturalMinor, 88, (4, 4), CadenceKind::Deceptive),
        Palette::Grey => (Mode::Chromatic, 100, (4, 4), CadenceKind::None),
        Palette::Exciting => (Mode::Major, 160, (2, 4), CadenceKind::Perfect),
        Palette::Calm => (Mode::Major, 72, (3, 4), CadenceKind::Perfect),
    };
    let preset_meter = TimeSignature::new(meter.0, meter.1).expect("preset meters are valid");
    TonalPlan {
        scale: Scale::new(spec.key_root, mode),
        anchor: Pitch::new((ANCHOR_BASE + spec.key_root.value()) as i32)
            .expect("anchor stays below middle C"),
        tempo_bpm: spec.tempo_bpm.unwrap_or(tempo),
        time_signature: spec.time_signature.unwrap_or(preset_meter),
        cadence,
    }
}

/// The measured characteristics of the bound series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DataCharacter {
    /// Present for line charts only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub segments: Option<Vec<TrendSegment>>,
    pub density: DensityClass,
    pub variance: VarianceClass,
    /// Present for pie charts only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proportions: Option<Proportions>,
}

/// Computes trend, density, variance and (for pies) proportions of the
/// bound series. A single value counts as narrow.
pub fn characterize(binding: &Binding<'_>) -> Result<DataCharacter, StatsError> {
    let series = binding.series();
    let variance = if series.len() < 2 {
        VarianceClass::from_level(VarianceLevel::Narrow, 0.0)
    } else {
        compute_variance(&series)?
    };
    let segments = match binding.spec.idiom {
        Idiom::Line => Some(segment_trends(&series, DEFAULT_MAX_SEGMENTS)?),
        _ => None,
    };
    let proportions = match binding.spec.idiom {
        Idiom::Pie => {
            let pairs: Vec<(String, f64)> = binding
                .labels()
                .into_iter()
                .zip(binding.values().iter().copied())
                .collect();
            Some(proportions(&pairs)?)
        }
        _ => None,
    };
    Ok(DataCharacter {
        segments,
        density: compute_density(series.len(), PHRASE_BARS),
        variance,
        proportions,
    })
}

/// Validates, measures and maps `dataset` according to `spec`.
pub fn melodify(dataset: &Dataset, spec: &MelodySpec) -> Result<Score, MelodifyError> {
    let binding = validate_binding(dataset, spec)?;
    let character = characterize(&binding)?;
    let plan = apply_palette(spec);
    Ok(match spec.idiom {
        Idiom::Bar => melodify_bar(&binding, &plan, &character)?,
        Idiom::Pie => melodify_pie(&binding, &plan, &character)?,
        Idiom::Line => melodify_line(&binding, &plan, &character)?,
        Idiom::Scatter => melodify_scatter(&binding, &plan, &character)?,
    })
}

/// Smallest bar line at or after `tick`.
fn next_bar_line(tick: u32, bar_ticks: u32) -> u32 {
    tick.div_ceil(bar_ticks) * bar_ticks
}

fn push_block(
    score: &mut Score,
    pitches: &[Pitch],
    onset: u32,
    duration: u32,
    velocity: u8,
    articulation: Articulation,
) {
    for &pitch in pitches {
        score.push_note(NoteEvent {
            onset,
            duration,
            pitch,
            velocity,
            articulation,
        });
    }
}

/// Appends the plan's cadence as one-bar block chords starting at the first
/// bar line at or after `from`.
fn append_cadence(score: &mut Score, plan: &TonalPlan, from: u32) -> Result<(), TheoryError> {
    let bar = score.bar_ticks();
    let mut onset = next_bar_line(from, bar);
    for chord in make_cadence(plan.cadence.valence(), &plan.scale, plan.anchor)? {
        push_block(
            score,
            &chord.pitches,
            onset,
            bar,
            VELOCITY_CADENCE,
            Articulation::Normal,
        );
        onset += bar;
    }
    Ok(())
}

/// (min, max) of a non-empty series.
fn domain(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        })
}
