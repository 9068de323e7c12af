use crate::ingest::{Binding, XAxis};
use crate::score::{Articulation, LoopRegion, PedalState, Score};
use crate::stats::{DensityLevel, StatsError};
use crate::theory::{
    degree_triad, quantize_pitch, Chord, ChordQuality, PitchClass, TheoryError, TriadVoicing,
};

use super::{
    append_cadence, domain, push_block, DataCharacter, MelodifyError, TonalPlan, VELOCITY_NORMAL,
};

/// Bars in one pie cycle.
pub const PIE_CYCLE_BARS: u32 = 4;

/// Scale degree (1-7) of `pc`, if it is a member.
fn degree_of(plan: &TonalPlan, pc: PitchClass) -> Option<u8> {
    (1..=7).find(|&d| plan.scale.degree_class(d).ok() == Some(pc))
}

/// The chord a single category value maps to: the value picks a root by
/// scale quantization and the scale supplies the triad on that root.
///
/// Diminished triads are swapped for the triad on the fifth degree, placed
/// in the octave just below the original root so the chord never rises above
/// where the value put it. Chromatic scales have no degrees; they get a major
/// triad on the quantized pitch.
pub(crate) fn value_chord(
    plan: &TonalPlan,
    value: f64,
    domain: (f64, f64),
    span: u8,
) -> Result<Chord, TheoryError> {
    let root = quantize_pitch(value, domain, &plan.scale, span, plan.anchor)?;
    let Some(degree) = degree_of(plan, root.class()) else {
        return Chord::from_root(root, ChordQuality::Major, None);
    };
    let chord = degree_triad(&plan.scale, degree, root, TriadVoicing::Diatonic)?;
    if chord.quality != ChordQuality::Diminished {
        return Ok(chord);
    }
    let fifth = plan.scale.degree_class(5)?;
    let down = (root.class().value() as i32 - fifth.value() as i32).rem_euclid(12);
    degree_triad(
        &plan.scale,
        5,
        root.transpose(-down)?,
        TriadVoicing::Diatonic,
    )
}

/// One block chord per category, a bar each, in row order; then the cadence.
/// A histogram with low density holds the sustain pedal over the data bars.
pub fn melodify_bar(
    binding: &Binding<'_>,
    plan: &TonalPlan,
    character: &DataCharacter,
) -> Result<Score, MelodifyError> {
    let values = binding.values();
    let mut score = plan.empty_score();
    let bar = score.bar_ticks();
    let dom = domain(values);
    let span = character.variance.semitone_span;
    for (i, &v) in values.iter().enumerate() {
        let chord = value_chord(plan, v, dom, span)?;
        push_block(
            &mut score,
            &chord.pitches,
            i as u32 * bar,
            bar,
            VELOCITY_NORMAL,
            Articulation::Normal,
        );
    }
    let end = values.len() as u32 * bar;
    let reverb = matches!(binding.x(), XAxis::Bins(_))
        && binding.spec.histogram
        && character.density.level == DensityLevel::Low;
    if reverb {
        score.push_pedal(0, PedalState::Down);
        score.push_pedal(end, PedalState::Up);
    }
    append_cadence(&mut score, plan, end)?;
    score.sort_events();
    Ok(score)
}

/// Splits `total` slots among shares proportional to `ratios` by the
/// largest-remainder method: everyone gets the floor of their quota, then
/// leftover slots go to the largest fractional parts, earlier index first
/// on ties. The result always sums to `total`.
pub fn apportion(ratios: &[f64], total: u32) -> Vec<u32> {
    if ratios.is_empty() {
        return Vec::new();
    }
    let sum: f64 = ratios.iter().sum();
    let quotas: Vec<f64> = ratios.iter().map(|r| r / sum * total as f64).collect();
    let mut slots: Vec<u32> = quotas.iter().map(|q| q.floor() as u32).collect();
    let assigned: u32 = slots.iter().sum();
    let mut order: Vec<usize> = (0..ratios.len()).collect();
    order.sort_by(|&a, &b| {
        let fa = quotas[a] - quotas[a].floor();
        let fb = quotas[b] - quotas[b].floor();
        fb.total_cmp(&fa).then(a.cmp(&b))
    });
    for &i in order
        .iter()
        .cycle()
        .take(total.saturating_sub(assigned) as usize)
    {
        slots[i] += 1;
    }
    slots
}

/// Length of one pie cycle in ticks.
pub fn pie_cycle_ticks(score: &Score) -> u32 {
    PIE_CYCLE_BARS * score.bar_ticks()
}

/// Sixteenth-note grid the pie cycle is divided on.
fn pie_grid(score: &Score) -> u32 {
    score.ticks_per_quarter as u32 / 4
}

/// One chord per category, sounding for its share of a four-bar cycle. The
/// cycle is marked to repeat `loop_count` times and the cadence follows the
/// final repetition. Categories whose share rounds to nothing are silent.
pub fn melodify_pie(
    binding: &Binding<'_>,
    plan: &TonalPlan,
    character: &DataCharacter,
) -> Result<Score, MelodifyError> {
    let values = binding.values();
    let ratios: Vec<f64> = match &character.proportions {
        Some(p) => p.ratios().collect(),
        None => return Err(StatsError::AllZero.into()),
    };
    let mut score = plan.empty_score();
    let cycle = pie_cycle_ticks(&score);
    let grid = pie_grid(&score);
    let slots = apportion(&ratios, cycle / grid);
    let dom = domain(values);
    let span = character.variance.semitone_span;
    let mut onset = 0;
    for (&v, &n) in values.iter().zip(&slots) {
        if n == 0 {
            continue;
        }
        let chord = value_chord(plan, v, dom, span)?;
        let duration = n * grid;
        push_block(
            &mut score,
            &chord.pitches,
            onset,
            duration,
            VELOCITY_NORMAL,
            Articulation::Normal,
        );
        onset += duration;
    }
    score.loop_region = Some(LoopRegion {
        start: 0,
        end: cycle,
        count: binding.spec.loop_count.max(1),
    });
    append_cadence(&mut score, plan, cycle)?;
    score.sort_events();
    Ok(score)
}
