//! Nine bundled demonstration tracks, one per combination of idiom and
//! palette worth hearing. Each dataset is synthetic and built so that the
//! crate's own classifiers put it in the density and variance class the
//! track is meant to demonstrate.

use crate::emit::{write_smf, write_text_score, SmfConfig};
use crate::ingest::{validate_binding, Dataset, Idiom, MelodySpec, Palette};
use crate::melodifier::{characterize, melodify, MelodifyError};
use crate::score::{expand_loops, Score};
use crate::stats::{DensityLevel, VarianceLevel};
use crate::theory::PitchClass;

/// A bundled track: data, spec, and the characteristics it must exhibit.
#[derive(Debug, Clone)]
pub struct Track {
    pub name: &'static str,
    pub dataset: Dataset,
    pub spec: MelodySpec,
    pub density: Option<DensityLevel>,
    pub variance: Option<VarianceLevel>,
}

/// A rendered track.
#[derive(Debug, Clone)]
pub struct Rendered {
    /// As compiled, loop marker included.
    pub score: Score,
    pub midi: Vec<u8>,
    pub text: String,
}

fn table(names: &[&str], rows: Vec<Vec<String>>) -> Dataset {
    Dataset::from_cells(names.iter().map(|s| s.to_string()).collect(), rows)
        .expect("bundled data is well-formed")
}

fn categories(pairs: &[(&str, f64)]) -> Dataset {
    table(
        &["category", "value"],
        pairs
            .iter()
            .map(|(c, v)| vec![c.to_string(), v.to_string()])
            .collect(),
    )
}

fn indexed(values: &[f64]) -> Dataset {
    table(
        &["x", "value"],
        values
            .iter()
            .enumerate()
            .map(|(i, v)| vec![i.to_string(), v.to_string()])
            .collect(),
    )
}

fn points(rows: &[(f64, f64)]) -> Dataset {
    table(
        &["x", "value"],
        rows.iter()
            .map(|(x, y)| vec![x.to_string(), y.to_string()])
            .collect(),
    )
}

fn spec(idiom: Idiom, palette: Palette, key: u8) -> MelodySpec {
    let spec = MelodySpec::new(idiom, palette, "value")
        .with_key(PitchClass::new(key).expect("key below 12"));
    match idiom {
        Idiom::Bar | Idiom::Pie => spec.with_x("category"),
        Idiom::Line | Idiom::Scatter => spec.with_x("x"),
    }
}

/// The nine tracks in order.
pub fn tracks() -> Vec<Track> {
    let track = |name, dataset, spec, density, variance| Track {
        name,
        dataset,
        spec,
        density,
        variance,
    };
    // Low density (< 8 points) with a wide spread.
    let sparse_wide = [
        (4.0, 90.0),
        (1.0, 2.0),
        (6.0, 55.0),
        (2.0, 30.0),
        (7.0, 8.0),
        (3.0, 70.0),
        (5.0, 15.0),
    ];
    // High density (48 points) hugging 100.
    let dense_narrow: Vec<(f64, f64)> = (0..48)
        .map(|i| (i as f64, 100.0 + ((i * 7) % 5) as f64 - 2.0))
        .collect();
    // High density (40 points) spread over 0..40.
    let dense_wide: Vec<(f64, f64)> = (0..40)
        .map(|i| (i as f64, ((i * 17) % 41) as f64))
        .collect();
    vec![
        track(
            "01-bar-positive",
            categories(&[("north", 3.0), ("east", 5.0), ("south", 2.0), ("west", 8.0)]),
            spec(Idiom::Bar, Palette::Positive, 0),
            None,
            None,
        ),
        track(
            "02-bar-negative",
            categories(&[("q1", 9.0), ("q2", 7.0), ("q3", 4.0), ("q4", 2.0)]),
            spec(Idiom::Bar, Palette::Negative, 9),
            None,
            None,
        ),
        track(
            "03-line-positive",
            indexed(&[0.0, 1.0, 2.0, 3.0, 4.0, 2.0, 0.0, 3.0, 6.0]),
            spec(Idiom::Line, Palette::Positive, 0),
            None,
            None,
        ),
        track(
            "04-line-negative",
            indexed(&[8.0, 7.0, 6.0, 5.0, 4.0, 5.0, 6.0, 4.0, 2.0]),
            spec(Idiom::Line, Palette::Negative, 0),
            None,
            None,
        ),
        track(
            "05-line-grey",
            indexed(&[2.0, 4.0, 6.0, 5.0, 4.0, 3.0, 6.0, 9.0]),
            spec(Idiom::Line, Palette::Grey, 0),
            None,
            None,
        ),
        track(
            "06-pie-positive",
            categories(&[
                ("rent", 40.0),
                ("food", 25.0),
                ("travel", 20.0),
                ("other", 15.0),
            ]),
            spec(Idiom::Pie, Palette::Positive, 0),
            None,
            None,
        ),
        track(
            "07-scatter-loden-hivar",
            points(&sparse_wide),
            spec(Idiom::Scatter, Palette::Positive, 0),
            Some(DensityLevel::Low),
            Some(VarianceLevel::Wide),
        ),
        track(
            "08-scatter-hiden-lovar",
            points(&dense_narrow),
            spec(Idiom::Scatter, Palette::Positive, 0),
            Some(DensityLevel::High),
            Some(VarianceLevel::Narrow),
        ),
        track(
            "09-scatter-grey",
            points(&dense_wide),
            spec(Idiom::Scatter, Palette::Grey, 0),
            Some(DensityLevel::High),
            Some(VarianceLevel::Wide),
        ),
    ]
}

/// Confirms the track's data lands in the classes it is meant to show.
pub fn check_character(track: &Track) -> Result<(), String> {
    let binding = validate_binding(&track.dataset, &track.spec).map_err(|e| e.to_string())?;
    let ch = characterize(&binding).map_err(|e| e.to_string())?;
    if let Some(want) = track.density {
        if ch.density.level != want {
            return Err(format!(
                "{}: density is {:?}, expected {want:?}",
                track.name, ch.density.level
            ));
        }
    }
    if let Some(want) = track.variance {
        if ch.variance.level != want {
            return Err(format!(
                "{}: variance is {:?}, expected {want:?}",
                track.name, ch.variance.level
            ));
        }
    }
    Ok(())
}

/// Compiles a track to a score, a MIDI file (loops played out) and a text
/// score (loop marker kept).
pub fn render(track: &Track) -> Result<Rendered, RenderError> {
    let score = melodify(&track.dataset, &track.spec)?;
    let midi = write_smf(&expand_loops(&score), &SmfConfig::default())?;
    let text = write_text_score(&score);
    Ok(Rendered { score, midi, text })
}

#[derive(Debug, thiserror::Error)]
pub enum RenderError {
    #[error(transparent)]
    Melodify(#[from] MelodifyError),
    #[error(transparent)]
    Emit(#[from] crate::emit::EmitError),
}
