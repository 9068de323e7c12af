//! A small SMF reader used to check what the writer produced. It shares no
//! code with the writer.

use std::collections::{HashMap, VecDeque};

use super::EmitError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParsedNote {
    pub onset: u64,
    pub duration: u64,
    pub pitch: u8,
    pub velocity: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParsedPedal {
    pub tick: u64,
    pub down: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParsedEvent {
    Note(ParsedNote),
    Pedal(ParsedPedal),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParsedSmf {
    pub division: u16,
    pub tempo_us: Option<u32>,
    /// (numerator, denominator)
    pub time_signature: Option<(u8, u16)>,
    /// (sharps/flats, minor flag)
    pub key_signature: Option<(i8, u8)>,
    pub program: Option<u8>,
    /// Length field of the track chunk as read from the file.
    pub track_length: u32,
    /// Notes and pedal changes in the order their starting message appears.
    pub events: Vec<ParsedEvent>,
}

impl ParsedSmf {
    pub fn notes(&self) -> impl Iterator<Item = &ParsedNote> + '_ {
        self.events.iter().filter_map(|e| match e {
            ParsedEvent::Note(n) => Some(n),
            ParsedEvent::Pedal(_) => None,
        })
    }

    pub fn pedals(&self) -> impl Iterator<Item = &ParsedPedal> + '_ {
        self.events.iter().filter_map(|e| match e {
            ParsedEvent::Pedal(p) => Some(p),
            ParsedEvent::Note(_) => None,
        })
    }
}

fn malformed(msg: impl Into<String>) -> EmitError {
    EmitError::MalformedSmf(msg.into())
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], EmitError> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| malformed(format!("truncated at byte {}", self.pos)))?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn byte(&mut self) -> Result<u8, EmitError> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, EmitError> {
        let b = self.take(2)?;
        Ok(u16::from_be_bytes([b[0], b[1]]))
    }

    fn u32(&mut self) -> Result<u32, EmitError> {
        let b = self.take(4)?;
        Ok(u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
    }

    fn vlq(&mut self) -> Result<u32, EmitError> {
        let mut value = 0u32;
        for _ in 0..4 {
            let b = self.byte()?;
            value = (value << 7) | (b & 0x7f) as u32;
            if b & 0x80 == 0 {
                return Ok(value);
            }
        }
        Err(malformed("variable-length quantity longer than four bytes"))
    }

    fn done(&self) -> bool {
        self.pos == self.bytes.len()
    }
}

/// Reads back a single-track file as written by `write_smf`: notes with their
/// sounding durations and sustain-pedal changes. Note-offs close the oldest
/// open note of the same pitch.
pub fn parse_smf_minimal(bytes: &[u8]) -> Result<ParsedSmf, EmitError> {
    let mut file = Cursor { bytes, pos: 0 };
    if file.take(4)? != b"MThd" {
        return Err(malformed("missing MThd header"));
    }
    if file.u32()? != 6 {
        return Err(malformed("header length is not 6"));
    }
    let format = file.u16()?;
    let tracks = file.u16()?;
    let division = file.u16()?;
    if format != 0 || tracks != 1 {
        return Err(malformed(format!(
            "format {format} with {tracks} tracks is not supported"
        )));
    }
    if division & 0x8000 != 0 {
        return Err(malformed("SMPTE time division is not supported"));
    }
    if file.take(4)? != b"MTrk" {
        return Err(malformed("missing MTrk chunk"));
    }
    let track_length = file.u32()?;
    let body = file.take(track_length as usize)?;
    if !file.done() {
        return Err(malformed("trailing bytes after the track chunk"));
    }

    let mut out = ParsedSmf {
        division,
        track_length,
        ..ParsedSmf::default()
    };
    let mut track = Cursor {
        bytes: body,
        pos: 0,
    };
    let mut now = 0u64;
    let mut open: HashMap<u8, VecDeque<usize>> = HashMap::new();
    let mut ended = false;

    while !track.done() {
        if ended {
            return Err(malformed("events after end of track"));
        }
        now += track.vlq()? as u64;
        let status = track.byte()?;
        if status < 0x80 {
            return Err(malformed(format!("missing status byte at tick {now}")));
        }
        match status & 0xf0 {
            0x80 | 0x90 => {
                let pitch = track.byte()?;
                let velocity = track.byte()?;
                if status & 0xf0 == 0x90 && velocity > 0 {
                    open.entry(pitch).or_default().push_back(out.events.len());
                    out.events.push(ParsedEvent::Note(ParsedNote {
                        onset: now,
                        duration: 0,
                        pitch,
                        velocity,
                    }));
                } else {
                    let idx = open
                        .get_mut(&pitch)
                        .and_then(VecDeque::pop_front)
                        .ok_or_else(|| {
                            malformed(format!("note-off {pitch} at {now} without note-on"))
                        })?;
                    if let ParsedEvent::Note(n) = &mut out.events[idx] {
                        n.duration = now - n.onset;
                    }
                }
            }
            0xb0 => {
                let controller = track.byte()?;
                let value = track.byte()?;
                if controller == 64 {
                    out.events.push(ParsedEvent::Pedal(ParsedPedal {
                        tick: now,
                        down: value >= 64,
                    }));
                }
            }
            0xa0 | 0xe0 => {
                track.take(2)?;
            }
            0xc0 => out.program = Some(track.byte()?),
            0xd0 => {
                track.byte()?;
            }
            _ => match status {
                0xff => {
                    let kind = track.byte()?;
                    let len = track.vlq()? as usize;
                    let data = track.take(len)?;
                    match (kind, len) {
                        (0x2f, 0) => ended = true,
                        (0x51, 3) => {
                            out.tempo_us = Some(u32::from_be_bytes([0, data[0], data[1], data[2]]))
                        }
                        (0x58, 4) => out.time_signature = Some((data[0], 1u16 << data[1].min(15))),
                        (0x59, 2) => out.key_signature = Some((data[0] as i8, data[1])),
                        (0x2f | 0x51 | 0x58 | 0x59, _) => {
                            return Err(malformed(format!("meta {kind:#x} has bad length {len}")))
                        }
                        _ => {}
                    }
                }
                0xf0 | 0xf7 => {
                    let len = track.vlq()? as usize;
                    track.take(len)?;
                }
                _ => return Err(malformed(format!("unsupported status {status:#x}"))),
            },
        }
    }
    if !ended {
        return Err(malformed("missing end-of-track"));
    }
    if let Some((pitch, _)) = open.iter().find(|(_, q)| !q.is_empty()) {
        return Err(malformed(format!("note {pitch} is never released")));
    }
    Ok(out)
}
