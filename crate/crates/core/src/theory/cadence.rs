use serde::Serialize;

use super::chord::lowest_at_or_above;
use super::{Chord, ChordQuality, Pitch, Scale, TheoryError};

/// Emotional colour of a closing progression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valence {
    Positive,
    Negative,
    Grey,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CadenceKind {
    /// V -> I
    Perfect,
    /// V -> vi
    Deceptive,
    None,
}

impl Valence {
    pub fn cadence_kind(self) -> CadenceKind {
        match self {
            Valence::Positive => CadenceKind::Perfect,
            Valence::Negative => CadenceKind::Deceptive,
            Valence::Grey => CadenceKind::None,
        }
    }
}

impl CadenceKind {
    pub fn valence(self) -> Valence {
        match self {
            CadenceKind::Perfect => Valence::Positive,
            CadenceKind::Deceptive => Valence::Negative,
            CadenceKind::None => Valence::Grey,
        }
    }
}

/// Builds the closing chord pair for `valence`.
///
/// Cadences are spelled in the major key that owns the scale's pitches: the
/// scale itself when major, its relative major when natural minor. A
/// deceptive cadence in C minor is therefore Bb major -> C minor, landing on
/// the minor tonic. The dominant sits a fourth below the major tonic and the
/// resolution chord directly above it, so `anchor` (the scale's tonic, or the
/// lowest tonic above it) is the top of the V -> I motion.
///
/// Grey valence yields no chords; a chromatic scale with any other valence is
/// an error.
pub fn make_cadence(
    valence: Valence,
    scale: &Scale,
    anchor: Pitch,
) -> Result<Vec<Chord>, TheoryError> {
    if valence == Valence::Grey {
        return Ok(Vec::new());
    }
    let key = scale.relative_major()?;
    let tonic = lowest_at_or_above(anchor, scale.root)?;
    let major_tonic = lowest_at_or_above(tonic, key.root)?;
    let dominant_root = major_tonic.transpose(-5)?;
    let dominant = Chord::from_root(dominant_root, ChordQuality::Major, Some(5))?;
    let resolution = match valence {
        Valence::Positive => Chord::from_root(major_tonic, ChordQuality::Major, Some(1))?,
        Valence::Negative => {
            Chord::from_root(dominant_root.transpose(2)?, ChordQuality::Minor, Some(6))?
        }
        Valence::Grey => unreachable!(),
    };
    Ok(vec![dominant, resolution])
}
