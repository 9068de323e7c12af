use std::fmt;

use super::TheoryError;

const SHARP_NAMES: [&str; 12] = [
    "C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B",
];

/// One of the twelve pitch classes, `0` = C.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PitchClass(u8);

impl PitchClass {
    pub const C: PitchClass = PitchClass(0);

    /// Wraps any integer onto the twelve pitch classes.
    pub fn wrapping(n: i32) -> Self {
        PitchClass(n.rem_euclid(12) as u8)
    }

    pub fn new(pc: u8) -> Option<Self> {
        (pc < 12).then_some(PitchClass(pc))
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// Transposes upward by `semitones`, wrapping at the octave.
    pub fn transpose(self, semitones: i32) -> Self {
        Self::wrapping(self.0 as i32 + semitones)
    }

    /// Parses a note name such as `C`, `f#` or `Bb` (case-insensitive letter).
    pub fn from_name(name: &str) -> Option<Self> {
        let mut chars = name.trim().chars();
        let base = match chars.next()?.to_ascii_uppercase() {
            'C' => 0,
            'D' => 2,
            'E' => 4,
            'F' => 5,
            'G' => 7,
            'A' => 9,
            'B' => 11,
            _ => return None,
        };
        let shift = match chars.as_str() {
            "" => 0,
            "#" => 1,
            "b" => -1,
            _ => return None,
        };
        Some(Self::wrapping(base + shift))
    }

    pub fn name(self) -> &'static str {
        SHARP_NAMES[self.0 as usize]
    }
}

impl fmt::Display for PitchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A MIDI note number in `0..=127`; 60 is middle C (C4).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pitch(u8);

impl Pitch {
    pub const MIDDLE_C: Pitch = Pitch(60);
    pub const MAX: u8 = 127;

    pub fn new(midi: i32) -> Result<Self, TheoryError> {
        if (0..=Self::MAX as i32).contains(&midi) {
            Ok(Pitch(midi as u8))
        } else {
            Err(TheoryError::OutOfMidiRange(midi))
        }
    }

    pub fn midi(self) -> u8 {
        self.0
    }

    pub fn class(self) -> PitchClass {
        PitchClass(self.0 % 12)
    }

    /// Octave number in scientific pitch notation (C4 = 60).
    pub fn octave(self) -> i32 {
        self.0 as i32 / 12 - 1
    }

    pub fn transpose(self, semitones: i32) -> Result<Self, TheoryError> {
        Self::new(self.0 as i32 + semitones)
    }
}

impl fmt::Display for Pitch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.class(), self.octave())
    }
}

/// Distance between two pitches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    /// Absolute distance in semitones.
    pub semitones: u8,
    /// Distance reduced to a single octave, `0..12`.
    pub class: u8,
}

pub fn interval_semitones(a: Pitch, b: Pitch) -> Interval {
    let semitones = a.0.abs_diff(b.0);
    Interval {
        semitones,
        class: semitones % 12,
    }
}

/// True when the two pitches form an augmented fourth / diminished fifth,
/// in any octave.
pub fn is_tritone(a: Pitch, b: Pitch) -> bool {
    interval_semitones(a, b).class == 6
}
