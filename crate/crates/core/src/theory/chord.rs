use std::fmt;

use serde::Serialize;

use super::{Pitch, PitchClass, Scale, TheoryError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChordQuality {
    Major,
    Minor,
    Diminished,
}

impl ChordQuality {
    /// Semitones from root to third and from third to fifth.
    pub fn stack(self) -> (u8, u8) {
        match self {
            ChordQuality::Major => (4, 3),
            ChordQuality::Minor => (3, 4),
            ChordQuality::Diminished => (3, 3),
        }
    }

    fn from_stack(lower: u8, upper: u8) -> Option<Self> {
        match (lower, upper) {
            (4, 3) => Some(ChordQuality::Major),
            (3, 4) => Some(ChordQuality::Minor),
            (3, 3) => Some(ChordQuality::Diminished),
            _ => None,
        }
    }
}

/// A root-position triad.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Chord {
    /// Roman-numeral degree within the key, when the chord has one.
    pub degree: Option<u8>,
    pub quality: ChordQuality,
    pub pitches: [Pitch; 3],
}

impl Chord {
    pub fn from_root(
        root: Pitch,
        quality: ChordQuality,
        degree: Option<u8>,
    ) -> Result<Self, TheoryError> {
        let (lower, upper) = quality.stack();
        let third = root.transpose(lower as i32)?;
        let fifth = third.transpose(upper as i32)?;
        Ok(Chord {
            degree,
            quality,
            pitches: [root, third, fifth],
        })
    }

    pub fn root(&self) -> Pitch {
        self.pitches[0]
    }

    pub fn pitch_classes(&self) -> [PitchClass; 3] {
        self.pitches.map(|p| p.class())
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.pitches;
        write!(f, "{a}-{b}-{c}")
    }
}

/// How the third and fifth of a degree triad are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriadVoicing {
    /// Stack the scale's own third and fifth above the degree.
    Diatonic,
    /// Build a triad of this quality on the degree's pitch class, whatever
    /// the scale says (the degree becomes a local key: II of C is D major).
    KeyOfDegree(ChordQuality),
}

/// Lowest pitch at or above `anchor` whose class is `pc`.
pub(crate) fn lowest_at_or_above(anchor: Pitch, pc: PitchClass) -> Result<Pitch, TheoryError> {
    let up = (pc.value() as i32 - anchor.class().value() as i32).rem_euclid(12);
    anchor.transpose(up)
}

pub fn degree_triad(
    scale: &Scale,
    degree: u8,
    anchor: Pitch,
    voicing: TriadVoicing,
) -> Result<Chord, TheoryError> {
    if !(1..=7).contains(&degree) {
        return Err(TheoryError::InvalidDegree(degree));
    }
    let root_class = scale.degree_class(degree)?;
    let root = lowest_at_or_above(anchor, root_class)?;
    match voicing {
        TriadVoicing::KeyOfDegree(quality) => Chord::from_root(root, quality, Some(degree)),
        TriadVoicing::Diatonic => {
            let third_class = scale.degree_class(degree + 2)?;
            let fifth_class = scale.degree_class(degree + 4)?;
            let third = lowest_at_or_above(root, third_class)?;
            let fifth = lowest_at_or_above(third, fifth_class)?;
            let lower = third.midi() - root.midi();
            let upper = fifth.midi() - third.midi();
            let quality = ChordQuality::from_stack(lower, upper)
                .expect("natural scales only stack major, minor and diminished triads");
            Ok(Chord {
                degree: Some(degree),
                quality,
                pitches: [root, third, fifth],
            })
        }
    }
}
