//! Pitches, scales, triads, cadences and the mapping of data values onto
//! scale members.

mod cadence;
mod chord;
mod pitch;
mod quantize;
mod scale;

use thiserror::Error;

pub use cadence::{make_cadence, CadenceKind, Valence};
pub use chord::{degree_triad, Chord, ChordQuality, TriadVoicing};
pub use pitch::{interval_semitones, is_tritone, Interval, Pitch, PitchClass};
pub use quantize::{arpeggiate, quantize_pitch, ArpeggioDirection};
pub use scale::{build_scale, Mode, Scale};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("MIDI note {0} is outside 0..=127")]
    OutOfMidiRange(i32),
    #[error("scale degree {0} is not in 1..=7")]
    InvalidDegree(u8),
    #[error("chromatic scales have no functional degrees")]
    ChromaticMode,
    #[error("anchor pitch {0} is not a member of the scale")]
    AnchorNotInScale(u8),
}
