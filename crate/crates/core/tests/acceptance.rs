//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. All randomness is seeded.

mod common;

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;

use common::*;
use melodify::emit::{encode_vlq, parse_smf_minimal, write_smf, SmfConfig, VLQ_MAX};
use melodify::ingest::{validate_binding, Dataset, Idiom, MelodySpec, Palette};
use melodify::melodifier::{
    apply_palette, apportion, characterize, melodify, pie_cycle_ticks, TonalPlan,
};
use melodify::score::{expand_loops, total_duration_ticks, Articulation, PedalState, Score};
use melodify::stats::{segment_trends, DensityLevel, TrendSegment, VarianceLevel};
use melodify::theory::{quantize_pitch, Mode, Pitch, PitchClass, Scale};
use melodify::tracklist::tracks;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

const TONAL: [Palette; 4] = [
    Palette::Positive,
    Palette::Negative,
    Palette::Exciting,
    Palette::Calm,
];

fn random_key(r: &mut ChaCha8Rng) -> PitchClass {
    PitchClass::new(r.gen_range(0..12)).unwrap()
}

/// A random dataset shaped for `idiom`, with its spec.
fn random_case(r: &mut ChaCha8Rng, idiom: Idiom, palette: Palette) -> (Dataset, MelodySpec) {
    let key = random_key(r);
    let spec = MelodySpec::new(idiom, palette, "value").with_key(key);
    match idiom {
        Idiom::Bar | Idiom::Pie => {
            let k = r.gen_range(1..=12);
            let mut ys: Vec<f64> = (0..k).map(|_| r.gen_range(0..1000) as f64 / 10.0).collect();
            if ys.iter().sum::<f64>() == 0.0 {
                ys[0] = 1.0;
            }
            (categorical(&ys), spec.with_x("category"))
        }
        Idiom::Line | Idiom::Scatter => {
            let n = r.gen_range(2..=48);
            let rows: Vec<(f64, f64)> = (0..n)
                .map(|i| (i as f64, r.gen_range(-500..500) as f64 / 10.0))
                .collect();
            (points(&rows), spec.with_x("x"))
        }
    }
}

/// The major key whose V, I and vi chords close the piece.
fn cadence_key(plan: &TonalPlan) -> u8 {
    match plan.scale.mode {
        Mode::NaturalMinor => (plan.scale.root.value() + 3) % 12,
        _ => plan.scale.root.value(),
    }
}

fn verify_cadence(score: &Score, plan: &TonalPlan, palette: Palette) -> Result<(), String> {
    let expanded = expand_loops(score);
    let b = blocks(&expanded);
    check(b.len() >= 2, || "fewer than two chords".into())?;
    let (v, last) = (&b[b.len() - 2].1, &b[b.len() - 1].1);
    let k = cadence_key(plan);
    let want_last = match palette {
        Palette::Negative => minor_set((k + 9) % 12),
        _ => major_set(k),
    };
    check(v.len() == 3 && last.len() == 3, || {
        format!("cadence voicing {v:?} {last:?}")
    })?;
    check(sorted_classes(v) == major_set((k + 7) % 12), || {
        format!("penultimate chord {v:?} is not V of key {k}")
    })?;
    check(sorted_classes(last) == want_last, || {
        format!("final chord {last:?} is not the expected resolution in key {k}")
    })
}

fn criterion_1() -> Outcome {
    let mut r = rng(1);
    let mut n = 0;
    for idiom in Idiom::ALL {
        for palette in TONAL {
            for _ in 0..50 {
                let (data, spec) = random_case(&mut r, idiom, palette);
                let score = melodify(&data, &spec).map_err(|e| e.to_string())?;
                verify_cadence(&score, &apply_palette(&spec), palette)
                    .map_err(|e| format!("{idiom} {palette}: {e}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} scores end V-I (positive) or V-vi (negative)"))
}

fn criterion_2() -> Outcome {
    let ys = [0.0, 1.0, 2.0, 3.0, 4.0, 2.0, 0.0];
    let segs = segment_trends(&ys, melodify::stats::DEFAULT_MAX_SEGMENTS).unwrap();
    let slopes: Vec<f64> = segs.iter().map(|s| s.slope).collect();
    check(slopes == [1.0, -2.0], || {
        format!("segment slopes {slopes:?}")
    })?;
    let score = melodify(
        &column(&ys),
        &MelodySpec::new(Idiom::Line, Palette::Positive, "value"),
    )
    .map_err(|e| e.to_string())?;
    let notes = body_notes(&score);
    let (first, second) = notes.split_at(segs[0].point_count());
    let pitches = |ns: &[melodify::score::NoteEvent]| -> Vec<u8> {
        ns.iter().map(|n| n.pitch.midi()).collect()
    };
    let p1 = pitches(first);
    let p2 = pitches(second);
    check(sorted_classes(&p1) == major_set(0), || {
        format!("segment 1 {p1:?} is not C-E-G")
    })?;
    check(
        p1[0] % 12 == 0 && p1.windows(2).all(|w| w[0] < w[1]),
        || format!("segment 1 {p1:?} is not an ascending arpeggio from C"),
    )?;
    check(sorted_classes(&p2) == major_set(2), || {
        format!("segment 2 {p2:?} is not D-F#-A")
    })?;
    check(p2.windows(2).all(|w| w[0] > w[1]), || {
        format!("segment 2 {p2:?} is not descending")
    })?;
    let accents: Vec<usize> = notes
        .iter()
        .enumerate()
        .filter(|(_, n)| n.articulation == Articulation::Accent)
        .map(|(i, _)| i)
        .collect();
    check(accents == [first.len()], || {
        format!("accents at {accents:?}")
    })?;
    Ok("I ascending on C major, II descending on D major, accent on the turn".into())
}

fn criterion_3() -> Outcome {
    let mut r = rng(3);
    let mut report = Vec::new();
    let mut failed = false;
    let mut example = None;
    for idiom in Idiom::ALL {
        let mut clean = 0;
        for _ in 0..200 {
            let palette = *TONAL.choose(&mut r).unwrap();
            let (data, spec) = random_case(&mut r, idiom, palette);
            let score = melodify(&data, &spec).map_err(|e| e.to_string())?;
            let scale = apply_palette(&spec).scale;
            let stray = score
                .notes()
                .find(|n| !scale.contains(n.pitch.class()))
                .copied();
            match stray {
                None => clean += 1,
                Some(n) if example.is_none() => {
                    example = Some(format!(
                        "{idiom}/{palette} in {} {}: {} at tick {}",
                        scale.root, scale.mode, n.pitch, n.onset
                    ))
                }
                Some(_) => {}
            };
        }
        failed |= clean < 200;
        report.push(format!("{idiom} {clean}/200"));
    }
    let summary = format!("in-scale scores: {}", report.join(", "));
    if failed {
        Err(format!("{summary}; e.g. {}", example.unwrap_or_default()))
    } else {
        Ok(summary)
    }
}

fn scatter_case(r: &mut ChaCha8Rng, wide: bool) -> (Dataset, MelodySpec) {
    let n = r.gen_range(2..=60);
    let rows: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let y = if wide {
                r.gen_range(0.0..100.0)
            } else {
                100.0 + r.gen_range(-4.0..4.0)
            };
            (i as f64, y)
        })
        .collect();
    let palette = *Palette::ALL.choose(r).unwrap();
    let spec = MelodySpec::new(Idiom::Scatter, palette, "value")
        .with_x("x")
        .with_key(random_key(r));
    (points(&rows), spec)
}

fn criterion_4() -> Outcome {
    let mut r = rng(4);
    let (mut wide, mut narrow, mut widest) = (0, 0, 0u8);
    for i in 0..400 {
        let (data, spec) = scatter_case(&mut r, i % 2 == 0);
        let ch = characterize(&validate_binding(&data, &spec).unwrap()).unwrap();
        let score = melodify(&data, &spec).map_err(|e| e.to_string())?;
        let anchor = apply_palette(&spec).anchor.midi();
        let reach = score.notes().map(|n| n.pitch.midi()).max().unwrap() - anchor;
        let floor_ok = body_notes(&score).iter().all(|n| n.pitch.midi() >= anchor);
        check(floor_ok, || "a data note fell below the anchor".into())?;
        match ch.variance.level {
            VarianceLevel::Wide => {
                wide += 1;
                widest = widest.max(reach);
                check(reach <= 36, || {
                    format!("wide dataset reached {reach} semitones")
                })?;
            }
            VarianceLevel::Narrow => {
                narrow += 1;
                check(reach <= 12, || {
                    format!("narrow dataset reached {reach} semitones")
                })?;
            }
            VarianceLevel::Medium => {
                check(reach <= 24, || {
                    format!("medium dataset reached {reach} semitones")
                })?;
            }
        }
    }
    check(wide > 0 && narrow > 0, || {
        format!("{wide} wide / {narrow} narrow samples")
    })?;
    check(widest > 24, || format!("widest wide reach only {widest}"))?;
    Ok(format!(
        "{wide} wide (max reach {widest} <= 36), {narrow} narrow (<= 12)"
    ))
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    let mut seen = [0usize; 3];
    for _ in 0..300 {
        let wide = r.gen_bool(0.5);
        let (data, mut spec) = scatter_case(&mut r, wide);
        // spread the sizes so every density level shows up
        let n = r.gen_range(1..=64);
        let rows: Vec<(f64, f64)> = (0..n).map(|i| (i as f64, r.gen_range(0.0..10.0))).collect();
        let data = if r.gen_bool(0.5) { points(&rows) } else { data };
        spec.x_field = Some("x".into());
        let level = characterize(&validate_binding(&data, &spec).unwrap())
            .unwrap()
            .density
            .level;
        let score = melodify(&data, &spec).map_err(|e| e.to_string())?;
        let pedals: Vec<(u32, PedalState)> = score.pedals().map(|p| (p.tick, p.state)).collect();
        match level {
            DensityLevel::Low => {
                seen[0] += 1;
                let ok = pedals.len() == 2
                    && pedals[0].1 == PedalState::Down
                    && pedals[1].1 == PedalState::Up
                    && pedals[0].0 < pedals[1].0;
                check(ok, || format!("low density pedals {pedals:?}"))?;
            }
            other => {
                seen[if other == DensityLevel::Medium { 1 } else { 2 }] += 1;
                check(pedals.is_empty(), || {
                    format!("{other:?} density has pedals")
                })?;
            }
        }
    }
    check(seen.iter().all(|&c| c > 0), || {
        format!("levels seen {seen:?}")
    })?;
    Ok(format!(
        "low {} with one pedal pair, medium {} and high {} dry",
        seen[0], seen[1], seen[2]
    ))
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    for case in 0..500 {
        let k = r.gen_range(1..=12);
        let mut ys: Vec<f64> = (0..k)
            .map(|_| {
                if r.gen_bool(0.15) {
                    0.0
                } else {
                    r.gen_range(0.0..50.0)
                }
            })
            .collect();
        if ys.iter().all(|&v| v == 0.0) {
            ys[r.gen_range(0..k)] = 1.0;
        }
        let palette = *Palette::ALL.choose(&mut r).unwrap();
        let spec = MelodySpec::new(Idiom::Pie, palette, "value").with_x("category");
        let data = categorical(&ys);
        let score = melodify(&data, &spec).map_err(|e| e.to_string())?;
        let cycle = pie_cycle_ticks(&score);
        let grid = score.ticks_per_quarter as u32 / 4;
        let sum: f64 = ys.iter().sum();
        let slots = apportion(
            &ys.iter().map(|y| y / sum).collect::<Vec<_>>(),
            cycle / grid,
        );
        for (y, s) in ys.iter().zip(&slots) {
            let dev = (*s as f64 * grid as f64 - y / sum * cycle as f64).abs();
            check(dev < grid as f64, || {
                format!("case {case}: deviation {dev} ticks")
            })?;
        }
        let mut spans: Vec<(u32, u32)> = body_notes(&score)
            .iter()
            .map(|n| (n.onset, n.duration))
            .collect();
        spans.dedup();
        let durations: Vec<u32> = spans.iter().map(|s| s.1).collect();
        let expected: Vec<u32> = slots.iter().filter(|&&s| s > 0).map(|s| s * grid).collect();
        check(durations == expected, || {
            format!("case {case}: chord durations {durations:?}, expected {expected:?}")
        })?;
        check(durations.iter().sum::<u32>() == cycle, || {
            format!(
                "case {case}: cycle sums to {}",
                durations.iter().sum::<u32>()
            )
        })?;
        let expanded = expand_loops(&score);
        let body_end = |s: &Score| body_notes(s).iter().map(|n| n.end()).max().unwrap();
        check(body_end(&expanded) == 2 * body_end(&score), || {
            format!("case {case}: looped body is not doubled")
        })?;
        let cadence_bars = if palette == Palette::Grey { 0 } else { 2 };
        check(
            total_duration_ticks(&expanded) == total_duration_ticks(&score)
                && total_duration_ticks(&score)
                    == 2 * cycle as u64 + cadence_bars * score.bar_ticks() as u64,
            || format!("case {case}: total duration mismatch"),
        )?;
    }
    Ok("500 vectors: exact cycle sums, deviation < one sixteenth, loop doubles".into())
}

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    let modes = [Mode::Major, Mode::NaturalMinor, Mode::Chromatic];
    for i in 0..10_000 {
        let root = random_key(&mut r);
        let scale = Scale::new(root, *modes.choose(&mut r).unwrap());
        let span = *[12u8, 24, 36].choose(&mut r).unwrap();
        let anchor = Pitch::new(48 + root.value() as i32).unwrap();
        let lo = r.gen_range(-100.0..100.0);
        let hi = lo + r.gen_range(0.0..200.0);
        let mut v = [
            r.gen_range(lo - 10.0..hi + 10.0),
            r.gen_range(lo - 10.0..hi + 10.0),
        ];
        v.sort_by(f64::total_cmp);
        let q = |x| quantize_pitch(x, (lo, hi), &scale, span, anchor).unwrap();
        check(q(v[0]) <= q(v[1]), || {
            format!("triple {i}: {v:?} in ({lo}, {hi})")
        })?;
    }
    for i in 0..1000 {
        let palette = *Palette::ALL.choose(&mut r).unwrap();
        let (data, spec) = random_case(&mut r, Idiom::Bar, palette);
        let ys = data
            .column("value")
            .unwrap()
            .as_quantitative()
            .unwrap()
            .to_vec();
        let score = melodify(&data, &spec).map_err(|e| e.to_string())?;
        let roots: Vec<u8> = blocks(&score)
            .iter()
            .take(ys.len())
            .map(|(_, p)| p[0])
            .collect();
        let max = ys.iter().cloned().fold(f64::MIN, f64::max);
        let top = *roots.iter().max().unwrap();
        let ok = ys
            .iter()
            .zip(&roots)
            .all(|(y, root)| *y != max || *root == top);
        check(ok, || format!("dataset {i}: {ys:?} gave roots {roots:?}"))?;
    }
    Ok("10000 monotone quantizations, 1000 bar argmax checks".into())
}

/// Residual of the least-squares line, computed directly.
fn residual(ys: &[f64]) -> f64 {
    let n = ys.len() as f64;
    let xm = (n - 1.0) / 2.0;
    let ym = ys.iter().sum::<f64>() / n;
    let sxx: f64 = (0..ys.len()).map(|i| (i as f64 - xm).powi(2)).sum();
    let sxy: f64 = ys
        .iter()
        .enumerate()
        .map(|(i, y)| (i as f64 - xm) * (y - ym))
        .sum();
    let b = sxy / sxx;
    ys.iter()
        .enumerate()
        .map(|(i, y)| (y - ym - b * (i as f64 - xm)).powi(2))
        .sum()
}

fn slope(ys: &[f64]) -> f64 {
    let n = ys.len() as f64;
    let xm = (n - 1.0) / 2.0;
    let ym = ys.iter().sum::<f64>() / n;
    let sxx: f64 = (0..ys.len()).map(|i| (i as f64 - xm).powi(2)).sum();
    ys.iter()
        .enumerate()
        .map(|(i, y)| (i as f64 - xm) * (y - ym))
        .sum::<f64>()
        / sxx
}

/// Exhaustive search for at most two segments with the same selection rule.
fn brute_two(ys: &[f64]) -> Vec<(usize, usize, f64)> {
    let last = ys.len() - 1;
    let one = residual(ys);
    let mut best = None::<(f64, usize)>;
    for b in 1..last {
        let cost = residual(&ys[..=b]) + residual(&ys[b..]);
        if best.is_none_or(|(c, _)| cost < c) {
            best = Some((cost, b));
        }
    }
    match best {
        Some((two, b)) if one > 1.05 * two => {
            vec![(0, b, slope(&ys[..=b])), (b, last, slope(&ys[b..]))]
        }
        _ => vec![(0, last, slope(ys))],
    }
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    for case in 0..500 {
        let n = r.gen_range(2..=12);
        let ys: Vec<f64> = (0..n).map(|_| r.gen_range(-10.0..10.0)).collect();
        let got: Vec<TrendSegment> = segment_trends(&ys, 2).map_err(|e| e.to_string())?;
        let want = brute_two(&ys);
        let same = got.len() == want.len()
            && got.iter().zip(&want).all(|(g, w)| {
                g.start_index == w.0 && g.end_index == w.1 && (g.slope - w.2).abs() < 1e-9
            });
        check(same, || {
            format!("case {case}: {ys:?}: got {got:?}, brute force {want:?}")
        })?;
    }
    Ok("500 series agree with exhaustive search".into())
}

fn decode_vlq(bytes: &[u8]) -> Option<(u32, usize)> {
    let mut v = 0u32;
    for (i, b) in bytes.iter().enumerate() {
        v = (v << 7) | (b & 0x7f) as u32;
        if b & 0x80 == 0 {
            return Some((v, i + 1));
        }
    }
    None
}

fn verify_midi(bytes: &[u8], expanded: &Score) -> Result<(), String> {
    let parsed = parse_smf_minimal(bytes).map_err(|e| e.to_string())?;
    check(&bytes[..4] == b"MThd" && &bytes[14..18] == b"MTrk", || {
        "chunk tags".into()
    })?;
    check(parsed.track_length as usize == bytes.len() - 22, || {
        "MTrk length field does not match the body".into()
    })?;
    check(parsed.events == expected_timeline(expanded), || {
        "parsed timeline differs from the score".into()
    })
}

fn criterion_9() -> Outcome {
    for n in 0..(1u32 << 16) {
        let bytes = encode_vlq(n).unwrap();
        check(decode_vlq(&bytes) == Some((n, bytes.len())), || {
            format!("vlq {n}")
        })?;
    }
    let mut r = rng(9);
    for _ in 0..10_000 {
        let n = r.gen_range(0..=VLQ_MAX);
        let bytes = encode_vlq(n).unwrap();
        check(decode_vlq(&bytes) == Some((n, bytes.len())), || {
            format!("vlq {n}")
        })?;
    }
    let mut files = 0;
    for track in tracks() {
        let score = melodify(&track.dataset, &track.spec).map_err(|e| e.to_string())?;
        let expanded = expand_loops(&score);
        let bytes = write_smf(&expanded, &SmfConfig::default()).map_err(|e| e.to_string())?;
        verify_midi(&bytes, &expanded).map_err(|e| format!("{}: {e}", track.name))?;
        files += 1;
    }
    for _ in 0..200 {
        let idiom = *Idiom::ALL.choose(&mut r).unwrap();
        let palette = *Palette::ALL.choose(&mut r).unwrap();
        let (data, spec) = random_case(&mut r, idiom, palette);
        let expanded = expand_loops(&melodify(&data, &spec).map_err(|e| e.to_string())?);
        let bytes = write_smf(&expanded, &SmfConfig::default()).map_err(|e| e.to_string())?;
        verify_midi(&bytes, &expanded).map_err(|e| format!("{idiom}/{palette}: {e}"))?;
        files += 1;
    }
    Ok(format!(
        "{files} files round-trip; VLQ exhaustive below 2^16"
    ))
}

fn criterion_10() -> Outcome {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for dir in &dirs {
        let mut sink = Vec::new();
        let code = melodify::cli::run(
            [
                "melodify",
                "tracklist",
                "--out",
                dir.path().to_str().unwrap(),
            ],
            &mut sink,
            &mut Vec::new(),
        );
        check(code == 0, || format!("tracklist exited {code}"))?;
    }
    for track in tracks() {
        let name = track.name;
        let text = fs::read(dirs[0].path().join(format!("{name}.txt"))).unwrap();
        let want = fs::read(golden.join(format!("{name}.txt")))
            .map_err(|e| format!("{name}: golden file: {e}"))?;
        check(text == want, || format!("{name}: text differs from golden"))?;
        let midi = fs::read(dirs[0].path().join(format!("{name}.mid"))).unwrap();
        let again = fs::read(dirs[1].path().join(format!("{name}.mid"))).unwrap();
        check(midi == again, || format!("{name}: MIDI not reproducible"))?;

        let score = melodify(&track.dataset, &track.spec).map_err(|e| e.to_string())?;
        let expanded = expand_loops(&score);
        verify_midi(&midi, &expanded).map_err(|e| format!("{name}: {e}"))?;
        track_properties(&track, &score).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok("9 tracks match golden text, reproducible MIDI, per-track properties hold".into())
}

/// The track-specific parts of criteria 1-5.
fn track_properties(track: &melodify::tracklist::Track, score: &Score) -> Result<(), String> {
    let spec = &track.spec;
    let plan = apply_palette(spec);
    let anchor = plan.anchor.midi();
    let reach = score.notes().map(|n| n.pitch.midi()).max().unwrap() - anchor;
    let pedals = score.pedals().count();
    match spec.palette {
        Palette::Grey => check(
            blocks(score).iter().all(|(_, ps)| ps.len() < 3)
                || spec.idiom != Idiom::Scatter && spec.idiom != Idiom::Line,
            || "grey track has a cadence".into(),
        )?,
        palette => verify_cadence(score, &plan, palette)?,
    }
    if spec.idiom == Idiom::Line {
        let ys = track
            .dataset
            .column("value")
            .unwrap()
            .as_quantitative()
            .unwrap();
        let segs = segment_trends(ys, melodify::stats::DEFAULT_MAX_SEGMENTS).unwrap();
        let accents = body_notes(score)
            .iter()
            .filter(|n| n.articulation == Articulation::Accent)
            .count();
        check(accents == segs.len() - 1, || {
            format!("{accents} accents for {} segments", segs.len())
        })?;
    } else if plan.scale.mode != Mode::Chromatic {
        check(
            score.notes().all(|n| plan.scale.contains(n.pitch.class())),
            || "pitch outside the scale".into(),
        )?;
    }
    match track.name {
        "06-pie-positive" => {
            let region = score.loop_region.ok_or("missing loop marker")?;
            check(
                region.count == 2 && region.len() == pie_cycle_ticks(score),
                || format!("loop marker {region:?}"),
            )?;
        }
        "07-scatter-loden-hivar" => {
            check(pedals == 2, || format!("{pedals} pedal events"))?;
            check(reach > 24 && reach <= 36, || format!("reach {reach}"))?;
        }
        "08-scatter-hiden-lovar" => {
            check(pedals == 0, || format!("{pedals} pedal events"))?;
            check(reach <= 12, || format!("reach {reach}"))?;
            let onsets: Vec<u32> = body_notes(score).iter().map(|n| n.onset).collect();
            check(onsets.windows(2).all(|w| w[1] - w[0] == 120), || {
                "not on a sixteenth grid".into()
            })?;
        }
        "09-scatter-grey" => {
            check(pedals == 0, || format!("{pedals} pedal events"))?;
            check(reach <= 36, || format!("reach {reach}"))?;
            let c_major = Scale::new(PitchClass::C, Mode::Major);
            check(
                score.notes().any(|n| !c_major.contains(n.pitch.class())),
                || "no chromatic pitches".into(),
            )?;
        }
        _ => {}
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("cadence correctness", criterion_1),
        ("slope rule worked example", criterion_2),
        ("scale membership", criterion_3),
        ("variance to range", criterion_4),
        ("density to reverb", criterion_5),
        ("pie conservation", criterion_6),
        ("monotonicity", criterion_7),
        ("segmentation oracle", criterion_8),
        ("SMF integrity", criterion_9),
        ("tracklist regression", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome =
            panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
