use std::fmt;

use serde::Serialize;

use super::{PitchClass, TheoryError};

const MAJOR_OFFSETS: [u8; 7] = [0, 2, 4, 5, 7, 9, 11];
const NATURAL_MINOR_OFFSETS: [u8; 7] = [0, 2, 3, 5, 7, 8, 10];
const CHROMATIC_OFFSETS: [u8; 12] = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Major,
    NaturalMinor,
    Chromatic,
}

impl Mode {
    /// Semitone offsets of the scale members above the root, ascending.
    pub fn offsets(self) -> &'static [u8] {
        match self {
            Mode::Major => &MAJOR_OFFSETS,
            Mode::NaturalMinor => &NATURAL_MINOR_OFFSETS,
            Mode::Chromatic => &CHROMATIC_OFFSETS,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Major => "major",
            Mode::NaturalMinor => "minor",
            Mode::Chromatic => "chromatic",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scale {
    pub root: PitchClass,
    pub mode: Mode,
}

pub fn build_scale(root: PitchClass, mode: Mode) -> Scale {
    Scale { root, mode }
}

impl Scale {
    pub fn new(root: PitchClass, mode: Mode) -> Self {
        build_scale(root, mode)
    }

    /// Member pitch classes in scale order, starting from the root.
    pub fn member_classes(&self) -> Vec<PitchClass> {
        self.mode
            .offsets()
            .iter()
            .map(|&o| self.root.transpose(o as i32))
            .collect()
    }

    pub fn contains(&self, pc: PitchClass) -> bool {
        let offset = (pc.value() as i32 - self.root.value() as i32).rem_euclid(12) as u8;
        self.mode.offsets().contains(&offset)
    }

    pub fn is_functional(&self) -> bool {
        self.mode != Mode::Chromatic
    }

    /// Pitch class of a 1-based scale degree. Degrees past 7 wrap into the
    /// next octave (degree 8 is the tonic again).
    pub fn degree_class(&self, degree: u8) -> Result<PitchClass, TheoryError> {
        if !self.is_functional() {
            return Err(TheoryError::ChromaticMode);
        }
        if degree == 0 {
            return Err(TheoryError::InvalidDegree(degree));
        }
        let offsets = self.mode.offsets();
        let idx = (degree as usize - 1) % offsets.len();
        Ok(self.root.transpose(offsets[idx] as i32))
    }

    /// The major key sharing this scale's pitch collection: the scale itself
    /// when major, the relative major (a minor third up) when minor.
    pub fn relative_major(&self) -> Result<Scale, TheoryError> {
        match self.mode {
            Mode::Major => Ok(*self),
            Mode::NaturalMinor => Ok(Scale::new(self.root.transpose(3), Mode::Major)),
            Mode::Chromatic => Err(TheoryError::ChromaticMode),
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.root, self.mode)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classes(scale: Scale) -> Vec<u8> {
        scale.member_classes().iter().map(|pc| pc.value()).collect()
    }

    #[test]
    fn c_major() {
        let s = build_scale(PitchClass::C, Mode::Major);
        assert_eq!(classes(s), vec![0, 2, 4, 5, 7, 9, 11]);
    }

    #[test]
    fn a_natural_minor() {
        let s = build_scale(PitchClass::new(9).unwrap(), Mode::NaturalMinor);
        assert_eq!(classes(s), vec![9, 11, 0, 2, 4, 5, 7]);
    }

    #[test]
    fn chromatic_has_all_twelve() {
        let s = build_scale(PitchClass::new(4).unwrap(), Mode::Chromatic);
        let mut c = classes(s);
        c.sort();
        assert_eq!(c, (0..12).collect::<Vec<_>>());
        assert_eq!(s.degree_class(1), Err(TheoryError::ChromaticMode));
    }

    #[test]
    fn relative_major_of_c_minor_is_e_flat() {
        let s = build_scale(PitchClass::C, Mode::NaturalMinor);
        let rel = s.relative_major().unwrap();
        assert_eq!(rel.root.value(), 3);
        for pc in 0..12 {
            let pc = PitchClass::new(pc).unwrap();
            assert_eq!(s.contains(pc), rel.contains(pc));
        }
    }
}
