use std::fmt::Write;

use crate::score::{Event, PedalState, Score};

/// Renders a score as plain text: a few header lines, then one line per
/// event in stored order.
///
/// ```text
/// ppq 480
/// tempo 120
/// time 4/4
/// key C major
/// 0 60 480 80 legato
/// 0 PEDAL down
/// ```
///
/// A `loop START END COUNT` header line appears when the score has a loop
/// marker. Lines end with `\n`.
pub fn write_text_score(score: &Score) -> String {
    let mut out = String::new();
    // Writing to a String cannot fail.
    let _ = writeln!(out, "ppq {}", score.ticks_per_quarter);
    let _ = writeln!(out, "tempo {}", score.tempo_bpm);
    let _ = writeln!(out, "time {}", score.time_signature);
    let _ = writeln!(
        out,
        "key {} {}",
        score.key_signature.root.name(),
        score.key_signature.mode.name()
    );
    if let Some(l) = score.loop_region {
        let _ = writeln!(out, "loop {} {} {}", l.start, l.end, l.count);
    }
    for event in &score.events {
        let _ = match event {
            Event::Note(n) => writeln!(
                out,
                "{} {} {} {} {}",
                n.onset,
                n.pitch.midi(),
                n.duration,
                n.velocity,
                n.articulation.name()
            ),
            Event::Pedal(p) => writeln!(
                out,
                "{} PEDAL {}",
                p.tick,
                match p.state {
                    PedalState::Down => "down",
                    PedalState::Up => "up",
                }
            ),
        };
    }
    out
}
