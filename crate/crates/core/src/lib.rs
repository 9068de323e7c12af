//! Compile tables and chart specifications into classical-music scores.
//!
//! The pipeline is `ingest` (table + spec, bound together) → `stats` (trend,
//! density, variance, proportions) → `melodifier` (palette and idiom mapped
//! onto scales, chords and arpeggios, using `theory`) → `score` (the timed
//! IR) → `emit` (Standard MIDI File or text).

pub mod cli;
pub mod emit;
pub mod ingest;
pub mod melodifier;
pub mod score;
pub mod stats;
pub mod theory;
pub mod tracklist;

pub use melodifier::{melodify, MelodifyError};
