//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use melodify::emit::{sounding_lengths, ParsedEvent, ParsedNote, ParsedPedal};
use melodify::ingest::Dataset;
use melodify::melodifier::VELOCITY_CADENCE;
use melodify::score::{Event, NoteEvent, PedalState, Score};

pub fn dataset(names: &[&str], rows: Vec<Vec<String>>) -> Dataset {
    Dataset::from_cells(names.iter().map(|s| s.to_string()).collect(), rows).unwrap()
}

/// `category`/`value` table with labels c0, c1, ...
pub fn categorical(values: &[f64]) -> Dataset {
    dataset(
        &["category", "value"],
        values
            .iter()
            .enumerate()
            .map(|(i, v)| vec![format!("c{i}"), v.to_string()])
            .collect(),
    )
}

/// Single `value` column.
pub fn column(values: &[f64]) -> Dataset {
    dataset(
        &["value"],
        values.iter().map(|v| vec![v.to_string()]).collect(),
    )
}

/// `x`/`value` table.
pub fn points(rows: &[(f64, f64)]) -> Dataset {
    dataset(
        &["x", "value"],
        rows.iter()
            .map(|(x, y)| vec![x.to_string(), y.to_string()])
            .collect(),
    )
}

/// Notes grouped by onset, each group sorted by pitch.
pub fn blocks(score: &Score) -> Vec<(u32, Vec<u8>)> {
    let mut out: Vec<(u32, Vec<u8>)> = Vec::new();
    for n in score.notes() {
        match out.iter_mut().find(|(t, _)| *t == n.onset) {
            Some((_, ps)) => ps.push(n.pitch.midi()),
            None => out.push((n.onset, vec![n.pitch.midi()])),
        }
    }
    out.sort_by_key(|(t, _)| *t);
    for (_, ps) in &mut out {
        ps.sort_unstable();
    }
    out
}

pub fn classes(pitches: &[u8]) -> Vec<u8> {
    pitches.iter().map(|p| p % 12).collect()
}

/// Pitch-class set of a major triad on `root`.
pub fn major_set(root: u8) -> Vec<u8> {
    let mut v: Vec<u8> = [0, 4, 7].iter().map(|i| (root + i) % 12).collect();
    v.sort_unstable();
    v
}

pub fn minor_set(root: u8) -> Vec<u8> {
    let mut v: Vec<u8> = [0, 3, 7].iter().map(|i| (root + i) % 12).collect();
    v.sort_unstable();
    v
}

pub fn sorted_classes(pitches: &[u8]) -> Vec<u8> {
    let mut v = classes(pitches);
    v.sort_unstable();
    v.dedup();
    v
}

/// Notes that are not part of the closing cadence.
pub fn body_notes(score: &Score) -> Vec<NoteEvent> {
    score
        .notes()
        .filter(|n| n.velocity != VELOCITY_CADENCE)
        .copied()
        .collect()
}

/// The timeline a MIDI reader should recover from an expanded score: notes
/// with gate-adjusted durations and pedal changes, in message order.
pub fn expected_timeline(expanded: &Score) -> Vec<ParsedEvent> {
    let notes: Vec<NoteEvent> = expanded.notes().copied().collect();
    let gates = sounding_lengths(&notes);
    let mut gate = gates.into_iter();
    expanded
        .events
        .iter()
        .map(|e| match e {
            Event::Note(n) => ParsedEvent::Note(ParsedNote {
                onset: n.onset as u64,
                duration: gate.next().unwrap() as u64,
                pitch: n.pitch.midi(),
                velocity: n.velocity,
            }),
            Event::Pedal(p) => ParsedEvent::Pedal(ParsedPedal {
                tick: p.tick as u64,
                down: p.state == PedalState::Down,
            }),
        })
        .collect()
}
