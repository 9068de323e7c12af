//! Data characteristics that drive the musical mapping: trend segments,
//! density, variance and categorical proportions.

mod segment;

use serde::Serialize;
use thiserror::Error;

pub use segment::{segment_trends, trend_epsilon, DEFAULT_MAX_SEGMENTS, SEGMENT_PENALTY};

/// Density below this many points per bar is `Low`.
pub const DENSITY_MEDIUM_AT: f64 = 2.0;
/// Density at or above this many points per bar is `High`.
pub const DENSITY_HIGH_AT: f64 = 8.0;
/// Quartile dispersion below this is `Narrow`.
pub const VARIANCE_MEDIUM_AT: f64 = 0.1;
/// Quartile dispersion at or above this is `Wide`.
pub const VARIANCE_WIDE_AT: f64 = 0.4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("series has {len} values, at least {min} required")]
    TooShort { len: usize, min: usize },
    #[error("all category values are zero")]
    AllZero,
    #[error("category {0:?} has a negative value")]
    NegativeValue(String),
    #[error("max_segments must be at least 1")]
    NoSegments,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrendDirection {
    Ascending,
    Descending,
    Neutral,
}

/// A fitted piece of the series. Adjacent segments share their boundary row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrendSegment {
    pub start_index: usize,
    pub end_index: usize,
    pub slope: f64,
    pub direction: TrendDirection,
}

impl TrendSegment {
    /// Number of rows covered, boundary rows included.
    pub fn point_count(&self) -> usize {
        self.end_index - self.start_index + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityLevel {
    Low,
    Medium,
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityClass {
    pub level: DensityLevel,
    pub points_per_bar: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VarianceLevel {
    Narrow,
    Medium,
    Wide,
}

impl VarianceLevel {
    pub fn semitone_span(self) -> u8 {
        match self {
            VarianceLevel::Narrow => 12,
            VarianceLevel::Medium => 24,
            VarianceLevel::Wide => 36,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VarianceClass {
    pub level: VarianceLevel,
    pub semitone_span: u8,
    /// The dispersion coefficient the level was read from.
    pub dispersion: f64,
}

impl VarianceClass {
    pub fn from_level(level: VarianceLevel, dispersion: f64) -> Self {
        VarianceClass {
            level,
            semitone_span: level.semitone_span(),
            dispersion,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProportionEntry {
    pub category: String,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Proportions {
    pub entries: Vec<ProportionEntry>,
}

impl Proportions {
    pub fn ratios(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|e| e.ratio)
    }
}

fn require_len(series: &[f64], min: usize) -> Result<(), StatsError> {
    if series.len() < min {
        Err(StatsError::TooShort {
            len: series.len(),
            min,
        })
    } else {
        Ok(())
    }
}

/// Ordinary least-squares slope of `series` against its index.
///
/// Uses the closed form `6 * sum((2i - (n-1)) * y_i) / (n (n^2 - 1))`, whose
/// weights are exact integers, so integer-valued data shifted by an integer
/// constant gives a bit-identical slope.
pub fn least_squares_slope(series: &[f64]) -> Result<f64, StatsError> {
    require_len(series, 2)?;
    let n = series.len() as f64;
    let weighted: f64 = series
        .iter()
        .enumerate()
        .map(|(i, y)| (2.0 * i as f64 - (n - 1.0)) * y)
        .sum();
    Ok(6.0 * weighted / (n * (n * n - 1.0)))
}

pub fn compute_density(series_length: usize, bar_count: usize) -> DensityClass {
    let points_per_bar = series_length as f64 / bar_count.max(1) as f64;
    let level = if points_per_bar < DENSITY_MEDIUM_AT {
        DensityLevel::Low
    } else if points_per_bar < DENSITY_HIGH_AT {
        DensityLevel::Medium
    } else {
        DensityLevel::High
    };
    DensityClass {
        level,
        points_per_bar,
    }
}

/// Quantile by linear interpolation between closest ranks (inclusive
/// method): position `(n - 1) * q` in the sorted data.
pub fn quantile_inclusive(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Classifies spread by the coefficient of quartile dispersion
/// `(Q3 - Q1) / |Q3 + Q1|`. When `Q3 + Q1 == 0` the coefficient falls back to
/// `range / mean(|y|)`; an all-zero or constant series is `Narrow`.
pub fn compute_variance(series: &[f64]) -> Result<VarianceClass, StatsError> {
    require_len(series, 2)?;
    let mut sorted = series.to_vec();
    sorted.sort_by(f64::total_cmp);
    let q1 = quantile_inclusive(&sorted, 0.25);
    let q3 = quantile_inclusive(&sorted, 0.75);
    let min = sorted[0];
    let max = sorted[sorted.len() - 1];

    let dispersion = if max == min {
        0.0
    } else if q3 + q1 != 0.0 {
        (q3 - q1) / (q3 + q1).abs()
    } else {
        let mean_abs = series.iter().map(|y| y.abs()).sum::<f64>() / series.len() as f64;
        if mean_abs == 0.0 {
            0.0
        } else {
            (max - min) / mean_abs
        }
    };
    let level = if dispersion < VARIANCE_MEDIUM_AT {
        VarianceLevel::Narrow
    } else if dispersion < VARIANCE_WIDE_AT {
        VarianceLevel::Medium
    } else {
        VarianceLevel::Wide
    };
    Ok(VarianceClass::from_level(level, dispersion))
}

pub fn proportions<S: AsRef<str>>(categories: &[(S, f64)]) -> Result<Proportions, StatsError> {
    if let Some((name, _)) = categories.iter().find(|(_, v)| *v < 0.0) {
        return Err(StatsError::NegativeValue(name.as_ref().to_string()));
    }
    let total: f64 = categories.iter().map(|(_, v)| v).sum();
    if total <= 0.0 {
        return Err(StatsError::AllZero);
    }
    let entries = categories
        .iter()
        .map(|(name, v)| ProportionEntry {
            category: name.as_ref().to_string(),
            ratio: v / total,
        })
        .collect();
    Ok(Proportions { entries })
}
