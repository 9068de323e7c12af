//! The musical IR: a timed list of notes and pedal changes plus tempo, meter
//! and key metadata. Independent of any output format.

use std::fmt;

use crate::theory::{is_tritone, Mode, Pitch, PitchClass, Scale};

pub const DEFAULT_TICKS_PER_QUARTER: u16 = 480;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TimeSignature {
    numerator: u8,
    denominator: u8,
}

impl TimeSignature {
    pub const COMMON: TimeSignature = TimeSignature {
        numerator: 4,
        denominator: 4,
    };

    /// `numerator` in `1..=32`, `denominator` a power of two in `1..=32`.
    pub fn new(numerator: u8, denominator: u8) -> Option<Self> {
        let ok =
            (1..=32).contains(&numerator) && denominator.is_power_of_two() && denominator <= 32;
        ok.then_some(TimeSignature {
            numerator,
            denominator,
        })
    }

    pub fn numerator(self) -> u8 {
        self.numerator
    }

    pub fn denominator(self) -> u8 {
        self.denominator
    }

    pub fn beat_ticks(self, ticks_per_quarter: u16) -> u32 {
        ticks_per_quarter as u32 * 4 / self.denominator as u32
    }

    pub fn bar_ticks(self, ticks_per_quarter: u16) -> u32 {
        self.numerator as u32 * self.beat_ticks(ticks_per_quarter)
    }
}

impl fmt::Display for TimeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KeySignature {
    pub root: PitchClass,
    pub mode: Mode,
}

impl KeySignature {
    pub fn scale(self) -> Scale {
        Scale::new(self.root, self.mode)
    }
}

impl From<Scale> for KeySignature {
    fn from(scale: Scale) -> Self {
        KeySignature {
            root: scale.root,
            mode: scale.mode,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Articulation {
    Normal,
    Staccato,
    Legato,
    Accent,
}

impl Articulation {
    pub fn name(self) -> &'static str {
        match self {
            Articulation::Normal => "normal",
            Articulation::Staccato => "staccato",
            Articulation::Legato => "legato",
            Articulation::Accent => "accent",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NoteEvent {
    pub onset: u32,
    pub duration: u32,
    pub pitch: Pitch,
    pub velocity: u8,
    pub articulation: Articulation,
}

impl NoteEvent {
    pub fn end(&self) -> u64 {
        self.onset as u64 + self.duration as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PedalState {
    Down,
    Up,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PedalEvent {
    pub tick: u32,
    pub state: PedalState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Event {
    Note(NoteEvent),
    Pedal(PedalEvent),
}

impl Event {
    pub fn tick(&self) -> u32 {
        match self {
            Event::Note(n) => n.onset,
            Event::Pedal(p) => p.tick,
        }
    }

    pub fn end(&self) -> u64 {
        match self {
            Event::Note(n) => n.end(),
            Event::Pedal(p) => p.tick as u64,
        }
    }

    /// Pedal changes sort before notes starting on the same tick.
    fn order_key(&self) -> (u32, u8) {
        match self {
            Event::Pedal(p) => (p.tick, 0),
            Event::Note(n) => (n.onset, 1),
        }
    }

    fn shifted(&self, by: u32) -> Event {
        match *self {
            Event::Note(n) => Event::Note(NoteEvent {
                onset: n.onset + by,
                ..n
            }),
            Event::Pedal(p) => Event::Pedal(PedalEvent {
                tick: p.tick + by,
                ..p
            }),
        }
    }
}

/// A region `[start, end)` played `count` times in total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LoopRegion {
    pub start: u32,
    pub end: u32,
    pub count: u32,
}

impl LoopRegion {
    pub fn len(&self) -> u32 {
        self.end.saturating_sub(self.start)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, tick: u32) -> bool {
        (self.start..self.end).contains(&tick)
    }

    /// Extra ticks added by the repetitions after the first.
    fn extension(&self) -> u64 {
        self.len() as u64 * self.count.saturating_sub(1) as u64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Score {
    pub ticks_per_quarter: u16,
    pub tempo_bpm: u16,
    pub time_signature: TimeSignature,
    pub key_signature: KeySignature,
    pub events: Vec<Event>,
    pub loop_region: Option<LoopRegion>,
}

impl Score {
    pub fn new(tempo_bpm: u16, time_signature: TimeSignature, key_signature: KeySignature) -> Self {
        Score {
            ticks_per_quarter: DEFAULT_TICKS_PER_QUARTER,
            tempo_bpm,
            time_signature,
            key_signature,
            events: Vec::new(),
            loop_region: None,
        }
    }

    pub fn push_note(&mut self, note: NoteEvent) {
        self.events.push(Event::Note(note));
    }

    pub fn push_pedal(&mut self, tick: u32, state: PedalState) {
        self.events.push(Event::Pedal(PedalEvent { tick, state }));
    }

    /// Stable sort into timeline order.
    pub fn sort_events(&mut self) {
        self.events.sort_by_key(Event::order_key);
    }

    pub fn notes(&self) -> impl Iterator<Item = &NoteEvent> + '_ {
        self.events.iter().filter_map(|e| match e {
            Event::Note(n) => Some(n),
            Event::Pedal(_) => None,
        })
    }

    pub fn pedals(&self) -> impl Iterator<Item = &PedalEvent> + '_ {
        self.events.iter().filter_map(|e| match e {
            Event::Pedal(p) => Some(p),
            Event::Note(_) => None,
        })
    }

    pub fn bar_ticks(&self) -> u32 {
        self.time_signature.bar_ticks(self.ticks_per_quarter)
    }

    /// End of the last event without loop expansion.
    fn written_end(&self) -> u64 {
        self.events.iter().map(Event::end).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    Unsorted,
    NonPositiveDuration,
    InvalidVelocity,
    InvalidTempo,
    InvalidResolution,
    UnbalancedPedal,
    LoopOutOfRange,
    LoopBoundaryCrossed,
    OutOfScale,
    Tritone,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub severity: Severity,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{tag}: {}", self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn errors(&self) -> impl Iterator<Item = &Violation> + '_ {
        self.violations
            .iter()
            .filter(|v| v.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Violation> + '_ {
        self.violations
            .iter()
            .filter(|v| v.severity == Severity::Warning)
    }

    /// No structural errors (warnings allowed).
    pub fn is_sound(&self) -> bool {
        self.errors().next().is_none()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    fn error(&mut self, kind: ViolationKind, message: String) {
        self.violations.push(Violation {
            kind,
            severity: Severity::Error,
            message,
        });
    }

    fn warn(&mut self, kind: ViolationKind, message: String) {
        self.violations.push(Violation {
            kind,
            severity: Severity::Warning,
            message,
        });
    }
}

/// Structural checks fail as errors; musical-taste checks (pitches outside
/// the key, co-sounding tritones) are reported as warnings.
pub fn validate(score: &Score) -> ValidationReport {
    let mut report = ValidationReport::default();

    if score.tempo_bpm == 0 {
        report.error(ViolationKind::InvalidTempo, "tempo must be positive".into());
    }
    if score.ticks_per_quarter == 0 || score.ticks_per_quarter > 0x7fff {
        report.error(
            ViolationKind::InvalidResolution,
            format!(
                "ticks per quarter {} outside 1..=32767",
                score.ticks_per_quarter
            ),
        );
    }

    if let Some(i) = score
        .events
        .windows(2)
        .position(|w| w[0].order_key() > w[1].order_key())
    {
        report.error(
            ViolationKind::Unsorted,
            format!(
                "event {} at tick {} is out of order",
                i + 1,
                score.events[i + 1].tick()
            ),
        );
    }

    for note in score.notes() {
        if note.duration == 0 {
            report.error(
                ViolationKind::NonPositiveDuration,
                format!(
                    "non-positive duration: note {} at tick {}",
                    note.pitch, note.onset
                ),
            );
        }
        if !(1..=127).contains(&note.velocity) {
            report.error(
                ViolationKind::InvalidVelocity,
                format!(
                    "velocity {} at tick {} outside 1..=127",
                    note.velocity, note.onset
                ),
            );
        }
    }

    check_pedals(score, &mut report);
    check_loop(score, &mut report);

    let key = score.key_signature;
    if key.mode != Mode::Chromatic {
        let scale = key.scale();
        for note in score.notes().filter(|n| !scale.contains(n.pitch.class())) {
            report.warn(
                ViolationKind::OutOfScale,
                format!("{} at tick {} is outside {}", note.pitch, note.onset, scale),
            );
        }
    }
    check_tritones(score, &mut report);
    report
}

fn pedal_pairs(score: &Score) -> Result<Vec<(u32, u32)>, String> {
    let mut pedals: Vec<&PedalEvent> = score.pedals().collect();
    pedals.sort_by_key(|p| p.tick);
    let mut pairs = Vec::new();
    let mut open: Option<u32> = None;
    for p in pedals {
        match (p.state, open) {
            (PedalState::Down, None) => open = Some(p.tick),
            (PedalState::Up, Some(down)) if p.tick > down => {
                pairs.push((down, p.tick));
                open = None;
            }
            _ => {
                return Err(format!(
                    "unbalanced pedal: {:?} at tick {} does not alternate",
                    p.state, p.tick
                ))
            }
        }
    }
    match open {
        Some(t) => Err(format!(
            "unbalanced pedal: Down at tick {t} is never released"
        )),
        None => Ok(pairs),
    }
}

fn check_pedals(score: &Score, report: &mut ValidationReport) {
    if let Err(msg) = pedal_pairs(score) {
        report.error(ViolationKind::UnbalancedPedal, msg);
    }
}

fn check_loop(score: &Score, report: &mut ValidationReport) {
    let Some(region) = score.loop_region else {
        return;
    };
    if region.is_empty() || region.count == 0 || region.end as u64 > score.written_end() {
        report.error(
            ViolationKind::LoopOutOfRange,
            format!(
                "loop [{}, {}) x{} does not fit the score (0..{})",
                region.start,
                region.end,
                region.count,
                score.written_end()
            ),
        );
        return;
    }
    // Anything sounding across a boundary would overlap its own repetitions.
    let crosses = |from: u64, to: u64| {
        let (start, end) = (region.start as u64, region.end as u64);
        (from < start && to > start) || (from < end && to > end)
    };
    if let Some(n) = score.notes().find(|n| crosses(n.onset as u64, n.end())) {
        report.error(
            ViolationKind::LoopBoundaryCrossed,
            format!(
                "note {} at tick {} crosses the loop boundary",
                n.pitch, n.onset
            ),
        );
    }
    if let Ok(pairs) = pedal_pairs(score) {
        if let Some((down, up)) = pairs
            .iter()
            .find(|(d, u)| region.contains(*d) != region.contains(*u))
        {
            report.error(
                ViolationKind::LoopBoundaryCrossed,
                format!("pedal held {down}..{up} crosses the loop boundary"),
            );
        }
    }
}

fn check_tritones(score: &Score, report: &mut ValidationReport) {
    let mut notes: Vec<&NoteEvent> = score.notes().collect();
    notes.sort_by_key(|n| n.onset);
    let mut sounding: Vec<&NoteEvent> = Vec::new();
    for note in notes {
        sounding.retain(|s| s.end() > note.onset as u64);
        for other in &sounding {
            if is_tritone(other.pitch, note.pitch) {
                report.warn(
                    ViolationKind::Tritone,
                    format!(
                        "tritone {}-{} sounding together at tick {}",
                        other.pitch, note.pitch, note.onset
                    ),
                );
            }
        }
        sounding.push(note);
    }
}

/// Length of the score once loops are played out.
pub fn total_duration_ticks(score: &Score) -> u64 {
    let Some(region) = score.loop_region else {
        return score.written_end();
    };
    let extension = region.extension();
    score
        .events
        .iter()
        .map(|e| {
            if e.tick() >= region.start {
                e.end() + extension
            } else {
                e.end()
            }
        })
        .max()
        .unwrap_or(0)
}

/// Writes the loop region out `count` times, shifting later events, and
/// drops the loop marker.
pub fn expand_loops(score: &Score) -> Score {
    let Some(region) = score.loop_region else {
        return score.clone();
    };
    let len = region.len();
    let extension = region.extension() as u32;
    let mut events = Vec::with_capacity(score.events.len() * region.count.max(1) as usize);
    for e in &score.events {
        let tick = e.tick();
        if tick < region.start {
            events.push(*e);
        } else if region.contains(tick) {
            for rep in 0..region.count {
                events.push(e.shifted(rep * len));
            }
        } else {
            events.push(e.shifted(extension));
        }
    }
    let mut out = Score {
        events,
        loop_region: None,
        ..score.clone()
    };
    out.sort_events();
    out
}
