use super::{Chord, Pitch, Scale, TheoryError};

/// Maps `value` linearly from `domain` onto `span` semitones above `anchor`
/// and snaps to the nearest scale member in `[anchor, anchor + span]`.
///
/// Equidistant members resolve to the lower one. A degenerate domain
/// (`min == max`) maps everything to `anchor`; values outside the domain are
/// clamped to it.
pub fn quantize_pitch(
    value: f64,
    domain: (f64, f64),
    scale: &Scale,
    span: u8,
    anchor: Pitch,
) -> Result<Pitch, TheoryError> {
    let (lo, hi) = domain;
    let top = anchor.midi() as i32 + span as i32;
    if top > Pitch::MAX as i32 {
        return Err(TheoryError::OutOfMidiRange(top));
    }
    if !scale.contains(anchor.class()) {
        return Err(TheoryError::AnchorNotInScale(anchor.midi()));
    }
    if hi <= lo || !value.is_finite() {
        return Ok(anchor);
    }
    let fraction = ((value - lo) / (hi - lo)).clamp(0.0, 1.0);
    let target = anchor.midi() as f64 + fraction * span as f64;

    let mut best = anchor;
    let mut best_dist = f64::INFINITY;
    for midi in anchor.midi() as i32..=top {
        let candidate = Pitch::new(midi)?;
        if !scale.contains(candidate.class()) {
            continue;
        }
        let dist = (midi as f64 - target).abs();
        // Ascending scan with strict comparison keeps the lower of two ties.
        if dist < best_dist {
            best = candidate;
            best_dist = dist;
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArpeggioDirection {
    Up,
    Down,
}

/// Breaks a chord into `note_count` successive pitches.
///
/// `Up` cycles root, third, fifth, then repeats an octave higher. `Down`
/// generates the same ascending run and plays it back from the top.
pub fn arpeggiate(
    chord: &Chord,
    direction: ArpeggioDirection,
    note_count: usize,
) -> Result<Vec<Pitch>, TheoryError> {
    let mut tones = (0..note_count)
        .map(|i| {
            let octave = (i / 3) as i32;
            chord.pitches[i % 3].transpose(12 * octave)
        })
        .collect::<Result<Vec<_>, _>>()?;
    if direction == ArpeggioDirection::Down {
        tones.reverse();
    }
    Ok(tones)
}
