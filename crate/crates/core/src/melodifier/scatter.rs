use crate::ingest::Binding;
use crate::score::{Articulation, NoteEvent, PedalState, Score};
use crate::stats::DensityLevel;
use crate::theory::quantize_pitch;

use super::{append_cadence, domain, DataCharacter, MelodifyError, TonalPlan, VELOCITY_NORMAL};

/// Grid step in ticks: quarters, eighths or sixteenths by density.
fn grid_step(level: DensityLevel, ticks_per_quarter: u16) -> u32 {
    let tpq = ticks_per_quarter as u32;
    match level {
        DensityLevel::Low => tpq,
        DensityLevel::Medium => tpq / 2,
        DensityLevel::High => tpq / 4,
    }
}

/// One detached note per point, ordered by x, pitched by y within the
/// variance span. Sparse data is played under the sustain pedal.
pub fn melodify_scatter(
    binding: &Binding<'_>,
    plan: &TonalPlan,
    character: &DataCharacter,
) -> Result<Score, MelodifyError> {
    let series = binding.series();
    let mut score = plan.empty_score();
    let step = grid_step(character.density.level, score.ticks_per_quarter);
    let dom = domain(&series);
    let span = character.variance.semitone_span;
    for (i, &y) in series.iter().enumerate() {
        score.push_note(NoteEvent {
            onset: i as u32 * step,
            duration: step,
            pitch: quantize_pitch(y, dom, &plan.scale, span, plan.anchor)?,
            velocity: VELOCITY_NORMAL,
            articulation: Articulation::Staccato,
        });
    }
    let end = series.len() as u32 * step;
    if character.density.level == DensityLevel::Low {
        score.push_pedal(0, PedalState::Down);
        score.push_pedal(end, PedalState::Up);
    }
    append_cadence(&mut score, plan, end)?;
    score.sort_events();
    Ok(score)
}
