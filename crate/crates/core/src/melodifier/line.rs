use crate::ingest::Palette;
use crate::score::{Articulation, NoteEvent, Score};
use crate::stats::{DensityLevel, StatsError, TrendDirection, TrendSegment};
use crate::theory::{
    arpeggiate, degree_triad, ArpeggioDirection, Chord, ChordQuality, Mode, Pitch, Scale,
    TheoryError, TriadVoicing,
};

use super::{
    append_cadence, domain, DataCharacter, MelodifyError, TonalPlan, VELOCITY_ACCENT,
    VELOCITY_NORMAL,
};
use crate::ingest::Binding;

/// The slope that counts as one scale degree. Integer-sloped data is read
/// literally (a slope of 2 means degree II); otherwise slopes are measured
/// in units of the average step across the whole range.
pub fn slope_unit(segments: &[TrendSegment], series: &[f64]) -> f64 {
    let integral = segments
        .iter()
        .all(|s| (s.slope - s.slope.round()).abs() <= 1e-9);
    if integral || series.len() < 2 {
        return 1.0;
    }
    let (lo, hi) = domain(series);
    let unit = (hi - lo) / (series.len() - 1) as f64;
    if unit > 0.0 {
        unit
    } else {
        1.0
    }
}

fn degree_for(slope: f64, unit: f64) -> u8 {
    (slope / unit).abs().round().clamp(1.0, 7.0) as u8
}

/// Subdivisions of a beat for each density level.
fn beat_division(level: DensityLevel) -> u32 {
    match level {
        DensityLevel::Low => 1,
        DensityLevel::Medium => 2,
        DensityLevel::High => 4,
    }
}

/// Chord tones from the chord root up to `span` semitones above it, in
/// ascending order.
fn tone_pool(chord: &Chord, span: u8) -> Result<Vec<Pitch>, TheoryError> {
    let root = chord.root().midi();
    let count = (span as usize / 12) * 3 + 1;
    let run = arpeggiate(chord, ArpeggioDirection::Up, count)?;
    Ok(run
        .into_iter()
        .take_while(|p| p.midi() - root <= span)
        .collect())
}

/// `count` arpeggio tones that cycle within the pool. Descending figures are
/// the ascending figure played backwards, so they close on the root.
fn figure(pool: &[Pitch], direction: TrendDirection, count: usize) -> Vec<Pitch> {
    let mut run: Vec<Pitch> = match direction {
        TrendDirection::Neutral => vec![pool[0]; count],
        _ => (0..count).map(|i| pool[i % pool.len()]).collect(),
    };
    if direction == TrendDirection::Descending {
        run.reverse();
    }
    run
}

/// A single chromatic tone a semitone short of `to`, approached from `from`,
/// when the leap is wider than a whole tone.
fn passing_tone(from: Pitch, to: Pitch) -> Option<Pitch> {
    let gap = to.midi() as i32 - from.midi() as i32;
    if gap.abs() <= 2 {
        return None;
    }
    to.transpose(-gap.signum()).ok()
}

/// Scale and triad quality that degrees are read against. Chromatic plans
/// have no degrees of their own and borrow the major scale on the same root.
fn harmony(plan: &TonalPlan, palette: Palette) -> (Scale, ChordQuality) {
    match (plan.scale.mode, palette) {
        (Mode::Chromatic, _) => (
            Scale::new(plan.scale.root, Mode::Major),
            ChordQuality::Major,
        ),
        (_, Palette::Negative) => (plan.scale, ChordQuality::Minor),
        _ => (plan.scale, ChordQuality::Major),
    }
}

/// Each trend segment becomes a legato arpeggio. The steeper the segment, the
/// higher the degree its triad is built on; rising segments arpeggiate
/// upwards, falling ones downwards, flat ones repeat the root. Every segment
/// after the first opens with an accent. Chromatic plans add a passing tone
/// into each leap wider than a whole tone.
pub fn melodify_line(
    binding: &Binding<'_>,
    plan: &TonalPlan,
    character: &DataCharacter,
) -> Result<Score, MelodifyError> {
    let series = binding.series();
    let segments = character.segments.as_deref().ok_or(StatsError::TooShort {
        len: series.len(),
        min: 2,
    })?;
    let mut score = plan.empty_score();
    let beat = plan.time_signature.beat_ticks(score.ticks_per_quarter);
    let step = (beat / beat_division(character.density.level)).max(1);
    let unit = slope_unit(segments, &series);
    let (scale, quality) = harmony(plan, binding.spec.palette);
    let chromatic = plan.scale.mode == Mode::Chromatic;
    let span = character.variance.semitone_span;

    let mut onset = 0u32;
    for (k, seg) in segments.iter().enumerate() {
        let degree = degree_for(seg.slope, unit);
        let chord = degree_triad(
            &scale,
            degree,
            plan.anchor,
            TriadVoicing::KeyOfDegree(quality),
        )?;
        let pool = tone_pool(&chord, span)?;
        let tones = figure(&pool, seg.direction, seg.point_count());
        for (i, &pitch) in tones.iter().enumerate() {
            let accent = k > 0 && i == 0;
            let passing = if chromatic {
                tones.get(i + 1).and_then(|&next| passing_tone(pitch, next))
            } else {
                None
            };
            let main_len = if passing.is_some() {
                step - step / 2
            } else {
                step
            };
            score.push_note(NoteEvent {
                onset,
                duration: main_len,
                pitch,
                velocity: if accent {
                    VELOCITY_ACCENT
                } else {
                    VELOCITY_NORMAL
                },
                articulation: if accent {
                    Articulation::Accent
                } else {
                    Articulation::Legato
                },
            });
            if let Some(p) = passing.filter(|_| step / 2 > 0) {
                score.push_note(NoteEvent {
                    onset: onset + main_len,
                    duration: step / 2,
                    pitch: p,
                    velocity: VELOCITY_NORMAL,
                    articulation: Articulation::Legato,
                });
            }
            onset += step;
        }
    }
    append_cadence(&mut score, plan, onset)?;
    score.sort_events();
    Ok(score)
}
