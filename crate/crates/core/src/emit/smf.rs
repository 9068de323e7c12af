use crate::score::{validate, Articulation, Event, NoteEvent, PedalState, Score};
use crate::theory::Mode;

use super::vlq::write_vlq;
use super::EmitError;

const SUSTAIN_CONTROLLER: u8 = 64;
const NOTE_OFF_VELOCITY: u8 = 0x40;

/// Output settings for a format-0 file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SmfConfig {
    /// General MIDI program (0 = acoustic grand piano).
    pub program: u8,
    pub channel: u8,
}

/// Ticks a note actually sounds for, given its notated duration.
pub fn gate_ticks(duration: u32, articulation: Articulation) -> u32 {
    let gated = match articulation {
        Articulation::Staccato => duration / 2,
        Articulation::Normal => (duration as u64 * 85 / 100) as u32,
        Articulation::Legato | Articulation::Accent => duration,
    };
    gated.max(1)
}

/// Resolves each note's sounding length. Accented notes take the gate of the
/// closest preceding non-accented note (or the next one when none precedes).
pub fn sounding_lengths(notes: &[NoteEvent]) -> Vec<u32> {
    let mut inherited: Vec<Option<Articulation>> = Vec::with_capacity(notes.len());
    let mut last = None;
    for n in notes {
        if n.articulation != Articulation::Accent {
            last = Some(n.articulation);
        }
        inherited.push(last);
    }
    let mut next = None;
    for (i, n) in notes.iter().enumerate().rev() {
        if n.articulation != Articulation::Accent {
            next = Some(n.articulation);
        }
        if inherited[i].is_none() {
            inherited[i] = next;
        }
    }
    notes
        .iter()
        .zip(inherited)
        .map(|(n, inh)| {
            let art = match n.articulation {
                Articulation::Accent => inh.unwrap_or(Articulation::Normal),
                other => other,
            };
            gate_ticks(n.duration, art)
        })
        .collect()
}

/// Sharps (positive) or flats (negative) of a major key, indexed by tonic
/// pitch class.
const MAJOR_KEY_ACCIDENTALS: [i8; 12] = [0, -5, 2, -3, 4, -1, 6, 1, -4, 3, -2, 5];

pub(crate) fn key_signature_meta(root: u8, mode: Mode) -> (i8, u8) {
    match mode {
        Mode::Major => (MAJOR_KEY_ACCIDENTALS[root as usize % 12], 0),
        Mode::NaturalMinor => (MAJOR_KEY_ACCIDENTALS[(root as usize + 3) % 12], 1),
        Mode::Chromatic => (0, 0),
    }
}

struct Message {
    tick: u64,
    /// Offs before pedal changes before ons on the same tick.
    rank: u8,
    seq: usize,
    bytes: [u8; 3],
}

/// Serializes a loop-free, structurally valid score as a format-0 Standard
/// MIDI File. Every channel message carries its own status byte.
pub fn write_smf(score: &Score, config: &SmfConfig) -> Result<Vec<u8>, EmitError> {
    if score.loop_region.is_some() {
        return Err(EmitError::UnexpandedLoop);
    }
    let report = validate(score);
    if let Some(v) = report.errors().next() {
        return Err(EmitError::StructuralViolation(v.message.clone()));
    }
    if config.channel > 15 || config.program > 127 {
        return Err(EmitError::InvalidConfig(format!(
            "channel {} / program {}",
            config.channel, config.program
        )));
    }
    let tempo_us = (60_000_000.0 / score.tempo_bpm as f64).round() as u32;
    if tempo_us > 0xff_ffff {
        return Err(EmitError::InvalidConfig(format!(
            "tempo {} BPM is too slow for a tempo meta event",
            score.tempo_bpm
        )));
    }

    let ch = config.channel;
    let notes: Vec<NoteEvent> = score.notes().copied().collect();
    let gates = sounding_lengths(&notes);
    let mut messages = Vec::with_capacity(notes.len() * 2 + 4);
    let mut note_idx = 0;
    for (seq, event) in score.events.iter().enumerate() {
        match event {
            Event::Note(n) => {
                let pitch = n.pitch.midi();
                messages.push(Message {
                    tick: n.onset as u64,
                    rank: 2,
                    seq,
                    bytes: [0x90 | ch, pitch, n.velocity],
                });
                messages.push(Message {
                    tick: n.onset as u64 + gates[note_idx] as u64,
                    rank: 0,
                    seq,
                    bytes: [0x80 | ch, pitch, NOTE_OFF_VELOCITY],
                });
                note_idx += 1;
            }
            Event::Pedal(p) => {
                let value = match p.state {
                    PedalState::Down => 127,
                    PedalState::Up => 0,
                };
                messages.push(Message {
                    tick: p.tick as u64,
                    rank: 1,
                    seq,
                    bytes: [0xb0 | ch, SUSTAIN_CONTROLLER, value],
                });
            }
        }
    }
    messages.sort_by_key(|m| (m.tick, m.rank, m.seq));

    let mut track = Vec::with_capacity(messages.len() * 4 + 32);
    // Tempo
    track.extend_from_slice(&[0x00, 0xff, 0x51, 0x03]);
    track.extend_from_slice(&tempo_us.to_be_bytes()[1..]);
    // Time signature: numerator, log2 denominator, clocks per beat, 32nds per quarter
    let ts = score.time_signature;
    track.extend_from_slice(&[
        0x00,
        0xff,
        0x58,
        0x04,
        ts.numerator(),
        ts.denominator().trailing_zeros() as u8,
        96 / ts.denominator(),
        8,
    ]);
    let (sf, mi) = key_signature_meta(score.key_signature.root.value(), score.key_signature.mode);
    track.extend_from_slice(&[0x00, 0xff, 0x59, 0x02, sf as u8, mi]);
    track.extend_from_slice(&[0x00, 0xc0 | ch, config.program]);

    let mut now = 0u64;
    for m in &messages {
        let delta = m.tick - now;
        let delta = u32::try_from(delta).map_err(|_| EmitError::VlqOverflow(delta))?;
        write_vlq(&mut track, delta)?;
        track.extend_from_slice(&m.bytes);
        now = m.tick;
    }
    track.extend_from_slice(&[0x00, 0xff, 0x2f, 0x00]);

    let mut out = Vec::with_capacity(track.len() + 22);
    out.extend_from_slice(b"MThd");
    out.extend_from_slice(&6u32.to_be_bytes());
    out.extend_from_slice(&0u16.to_be_bytes());
    out.extend_from_slice(&1u16.to_be_bytes());
    out.extend_from_slice(&score.ticks_per_quarter.to_be_bytes());
    out.extend_from_slice(b"MTrk");
    out.extend_from_slice(&(track.len() as u32).to_be_bytes());
    out.extend_from_slice(&track);
    Ok(out)
}
