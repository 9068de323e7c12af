use super::{least_squares_slope, require_len, StatsError, TrendDirection, TrendSegment};

/// Relative slack allowed when trading segments for simplicity: the fewest
/// segments whose cost is within `(1 + SEGMENT_PENALTY)` of the best
/// achievable cost win.
pub const SEGMENT_PENALTY: f64 = 0.05;
pub const DEFAULT_MAX_SEGMENTS: usize = 6;
/// A slope under this fraction of the full range per step is neutral.
const NEUTRAL_FRACTION: f64 = 0.05;
/// Segment costs below this fraction of the total sum of squares are zero.
const COST_FLOOR: f64 = 1e-10;

/// Threshold under which a slope counts as flat, relative to the series'
/// range per index step.
pub fn trend_epsilon(series: &[f64]) -> f64 {
    if series.len() < 2 {
        return 0.0;
    }
    let (min, max) = series
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &y| {
            (lo.min(y), hi.max(y))
        });
    NEUTRAL_FRACTION * (max - min) / (series.len() - 1) as f64
}

pub(crate) fn direction_of(slope: f64, epsilon: f64) -> TrendDirection {
    if slope > epsilon {
        TrendDirection::Ascending
    } else if slope < -epsilon {
        TrendDirection::Descending
    } else {
        TrendDirection::Neutral
    }
}

/// Prefix sums for O(1) least-squares residuals on any index range. Values
/// are taken relative to the first element so integer data shifted by a
/// constant produces identical sums.
struct ResidualTable {
    sum: Vec<f64>,
    sum_sq: Vec<f64>,
    sum_xy: Vec<f64>,
    floor: f64,
}

impl ResidualTable {
    fn new(series: &[f64]) -> Self {
        let origin = series[0];
        let n = series.len();
        let mut sum = Vec::with_capacity(n + 1);
        let mut sum_sq = Vec::with_capacity(n + 1);
        let mut sum_xy = Vec::with_capacity(n + 1);
        sum.push(0.0);
        sum_sq.push(0.0);
        sum_xy.push(0.0);
        for (i, y) in series.iter().enumerate() {
            let d = y - origin;
            sum.push(sum[i] + d);
            sum_sq.push(sum_sq[i] + d * d);
            sum_xy.push(sum_xy[i] + i as f64 * d);
        }
        let mut table = ResidualTable {
            sum,
            sum_sq,
            sum_xy,
            floor: 0.0,
        };
        let total = table.centered_sum_sq(0, n - 1);
        table.floor = COST_FLOOR * total;
        table
    }

    fn centered_sum_sq(&self, start: usize, end: usize) -> f64 {
        let m = (end - start + 1) as f64;
        let s = self.sum[end + 1] - self.sum[start];
        let ss = self.sum_sq[end + 1] - self.sum_sq[start];
        (ss - s * s / m).max(0.0)
    }

    /// Squared residual of the least-squares line through `start..=end`.
    fn cost(&self, start: usize, end: usize) -> f64 {
        let m = (end - start + 1) as f64;
        let s = self.sum[end + 1] - self.sum[start];
        let sxy_raw = self.sum_xy[end + 1] - self.sum_xy[start];
        let x_sum = (start + end) as f64 * m / 2.0;
        let sxx = m * (m * m - 1.0) / 12.0;
        let sxy = sxy_raw - x_sum * s / m;
        let residual = self.centered_sum_sq(start, end) - sxy * sxy / sxx;
        if residual <= self.floor {
            0.0
        } else {
            residual
        }
    }
}

/// Splits `series` into at most `max_segments` linear pieces.
///
/// Every contiguous segmentation whose pieces each cover at least two rows is
/// considered; adjacent pieces share their boundary row. For each segment
/// count the minimum total squared residual is found by dynamic programming
/// over breakpoints, then the smallest count whose cost is within
/// `(1 + SEGMENT_PENALTY)` of the cost at `max_segments` is returned. Equal
/// costs resolve to the earliest breakpoint.
pub fn segment_trends(
    series: &[f64],
    max_segments: usize,
) -> Result<Vec<TrendSegment>, StatsError> {
    require_len(series, 2)?;
    if max_segments == 0 {
        return Err(StatsError::NoSegments);
    }
    let n = series.len();
    let last = n - 1;
    let max_k = max_segments.min(last);
    let table = ResidualTable::new(series);

    // best[k][j]: minimal cost of covering 0..=j with k + 1 segments.
    let mut best = vec![vec![f64::INFINITY; n]; max_k];
    let mut prev = vec![vec![0usize; n]; max_k];
    for (j, cell) in best[0].iter_mut().enumerate().skip(1) {
        *cell = table.cost(0, j);
    }
    for k in 1..max_k {
        for j in (k + 1)..n {
            for i in k..j {
                let candidate = best[k - 1][i] + table.cost(i, j);
                if candidate < best[k][j] {
                    best[k][j] = candidate;
                    prev[k][j] = i;
                }
            }
        }
    }

    let target = best[max_k - 1][last];
    let chosen = (0..max_k)
        .find(|&k| best[k][last] <= (1.0 + SEGMENT_PENALTY) * target)
        .unwrap_or(max_k - 1);

    let mut bounds = vec![last];
    let mut j = last;
    for k in (1..=chosen).rev() {
        j = prev[k][j];
        bounds.push(j);
    }
    bounds.push(0);
    bounds.reverse();

    let epsilon = trend_epsilon(series);
    bounds
        .windows(2)
        .map(|w| {
            let slope = least_squares_slope(&series[w[0]..=w[1]])?;
            Ok(TrendSegment {
                start_index: w[0],
                end_index: w[1],
                slope,
                direction: direction_of(slope, epsilon),
            })
        })
        .collect()
}
